"""Conformal-block dimensions n_g(lam_1, ..., lam_s).

The genus is always reduced first by cutting a handle,
n_g(L) = sum_nu n_{g-1}(L, nu, nu*), until genus 0, where the s-point number
is read off an iterated fusion product.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .fusion import FusionTable, SMatrix, round_checked, fuse_vector
from .lie_core import AlgebraCtx, Weight, dual


def block_key(g: int, weights) -> tuple[int, tuple[Weight, ...]]:
    """Canonical key: zeros dropped, the rest sorted in alcove order."""
    return g, tuple(sorted(tuple(w) for w in weights if any(w)))


@dataclass
class BlockCache:
    memo: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def store(self, table, key, value):
        with self._lock:
            self.memo.setdefault((table.ctx, key), value)
        return value


def _product(cache: BlockCache, table: FusionTable, sorted_weights: tuple[Weight, ...]):
    """Fusion product of a sorted tuple, memoized along prefixes."""
    ck = (table.ctx, sorted_weights)
    hit = cache.products.get(ck)
    if hit is not None:
        return hit
    if not sorted_weights:
        vec = {table.ctx.zero: 1}
    else:
        vec = fuse_vector(table, _product(cache, table, sorted_weights[:-1]), sorted_weights[-1])
    cache.products[ck] = vec
    return vec


def n0_multipoint(table: FusionTable, weights, cache: BlockCache | None = None) -> int:
    """Genus-0 s-point number."""
    ctx = table.ctx
    weights = [tuple(w) for w in weights]
    s = len(weights)
    if s == 0:
        return 1
    if s == 1:
        return int(weights[0] == ctx.zero)
    if s == 2:
        return int(weights[1] == dual(ctx, weights[0]))
    if cache is None:
        vec = {ctx.zero: 1}
        for lam in weights[:-1]:
            vec = fuse_vector(table, vec, lam)
        return vec.get(dual(ctx, weights[-1]), 0)
    # symmetric in its arguments, so any canonical ordering will do
    ordered = tuple(sorted(weights))
    return _product(cache, table, ordered[:-1]).get(dual(ctx, ordered[-1]), 0)


def n_g(cache: BlockCache, table: FusionTable, g: int, weights) -> int:
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    key = block_key(g, weights)
    hit = cache.memo.get((table.ctx, key))
    if hit is not None:
        return hit
    g, ws = key
    if g == 0:
        return cache.store(table, key, n0_multipoint(table, ws, cache))
    ctx = table.ctx
    total = sum(n_g(cache, table, g - 1, ws + (nu, dual(ctx, nu))) for nu in ctx.alcove)
    return cache.store(table, key, total)


def n_g_split(table: FusionTable, g: int, weights, memo: dict | None = None) -> int:
    """n_g by a different cut order: separating cuts first, handles last.

    Zeros are kept, so inserting a vacuum goes through real fusion products.
    Pass the same ``memo`` dict across calls to share work.
    """
    ctx = table.ctx
    alcove = ctx.alcove
    memo = {} if memo is None else memo

    def go(g, ws):
        ws = tuple(sorted(ws))
        hit = memo.get((ctx, g, ws))
        if hit is not None:
            return hit
        s = len(ws)
        if g == 0:
            if s <= 3:
                val = n0_multipoint(table, ws)
            else:
                head, tail = ws[:2], ws[2:]
                val = sum(go(0, head + (nu,)) * go(0, tail + (dual(ctx, nu),)) for nu in alcove)
        elif s >= 2:
            val = sum(go(0, ws + (nu,)) * go(g, (dual(ctx, nu),)) for nu in alcove)
        elif g >= 2:
            val = sum(go(1, ws + (nu,)) * go(g - 1, (dual(ctx, nu),)) for nu in alcove)
        else:
            val = sum(go(0, ws + (nu, dual(ctx, nu))) for nu in alcove)
        memo[(ctx, g, ws)] = val
        return val

    return go(g, tuple(tuple(w) for w in weights))


def verlinde_numeric(smatrix: SMatrix, g: int, weights) -> int:
    """sum_mu S_{0mu}^{2-2g} prod_i S_{lam_i,mu}/S_{0mu}, rounded."""
    S = smatrix.entries
    s0 = S[0]
    terms = s0 ** (2 - 2 * g)
    for lam in weights:
        terms = terms * (S[smatrix.index(tuple(lam))] / s0)
    z = complex(np.sum(terms))
    return round_checked(z, f"genus-{g} Verlinde sum for {list(weights)}")


def dim_json(ctx: AlgebraCtx, g: int, n: int, oracle: int | None) -> dict:
    return {"r": ctx.r, "level": ctx.level, "genus": g, "n": n, "oracle": oracle, "match": n == oracle}
