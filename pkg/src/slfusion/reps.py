"""Finite-dimensional sl(r) modules: characters, dimensions, tensor products."""

from __future__ import annotations

import heapq
import json
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .lie_core import (
    AlgebraCtx,
    Weight,
    add,
    format_weight,
    height,
    inner,
    is_dominant,
    positive_roots,
    sub,
)
from .weyl import dominant_conjugate, fold_shifted

CHARACTER_CACHE_SIZE = 10_000


def weight_system(ctx: AlgebraCtx, lam: Weight) -> set[Weight]:
    """All weights of V_lam, closed under simple alpha-strings from the top down."""
    seen = {lam}
    heap = [(-height(ctx, lam), lam)]
    while heap:
        _, mu = heapq.heappop(heap)
        for i, a in enumerate(mu, start=1):
            nu = mu
            for _ in range(a):
                nu = sub(nu, ctx.simple_root(i))
                if nu not in seen:
                    seen.add(nu)
                    heapq.heappush(heap, (-height(ctx, nu), nu))
    return seen


@lru_cache(maxsize=CHARACTER_CACHE_SIZE)
def _character(ctx: AlgebraCtx, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    weights = weight_system(ctx, lam)
    dominant = sorted((mu for mu in weights if is_dominant(mu)), key=lambda mu: -height(ctx, mu))
    roots = positive_roots(ctx)
    lr = add(lam, ctx.rho)
    norm_top = inner(ctx, lr, lr)
    mult: dict[Weight, int] = {lam: 1}

    def lookup(nu):
        return mult[dominant_conjugate(ctx, nu)]

    # Freudenthal, top-down over dominant weights
    for mu in dominant[1:]:
        total = Fraction(0)
        for alpha in roots:
            nu = add(mu, alpha)
            while nu in weights:
                total += lookup(nu) * inner(ctx, nu, alpha)
                nu = add(nu, alpha)
        mr = add(mu, ctx.rho)
        m = 2 * total / (norm_top - inner(ctx, mr, mr))
        if m.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {m} at {mu} in V{lam}")
        mult[mu] = int(m)
    return tuple(sorted((nu, lookup(nu)) for nu in weights if lookup(nu)))


def weight_multiplicities(ctx: AlgebraCtx, lam: Weight) -> dict[Weight, int]:
    """Character of V_lam as {weight: multiplicity}."""
    lam = ctx.check_weight(lam)
    if not is_dominant(lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    return dict(_character(ctx, lam))


def weyl_dim(ctx: AlgebraCtx, lam: Weight) -> int:
    """prod over positive roots of (lam+rho, alpha)/(rho, alpha), done in integers."""
    if not is_dominant(lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    num = den = 1
    n = ctx.rank
    for i in range(n):
        for j in range(i, n):
            # alpha = alpha_{i+1} + ... + alpha_{j+1}; (omega_k, alpha_l) = delta_kl
            num *= sum(lam[i : j + 1]) + (j - i + 1)
            den *= j - i + 1
    return num // den


def tensor_decompose(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """Multiplicities c^nu_{lam,mu} of V_nu in V_lam (x) V_mu, by Racah-Speiser."""
    lam = ctx.check_weight(lam)
    mu = ctx.check_weight(mu)
    if not (is_dominant(lam) and is_dominant(mu)):
        raise ValueError("tensor_decompose needs dominant weights")
    if weyl_dim(ctx, mu) > weyl_dim(ctx, lam) or (
        weyl_dim(ctx, mu) == weyl_dim(ctx, lam) and mu > lam
    ):
        lam, mu = mu, lam
    acc: dict[Weight, int] = defaultdict(int)
    for delta, m in _character(ctx, mu):
        f = fold_shifted(ctx, add(lam, delta), affine=False)
        if f.sign:
            acc[f.rep] += f.sign * m
    out = {nu: c for nu, c in sorted(acc.items()) if c}
    if any(c < 0 for c in out.values()):
        raise ArithmeticError(f"negative tensor multiplicity in {lam} x {mu}: {out}")
    return out


def character_product(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> dict[Weight, int]:
    prod: dict[Weight, int] = defaultdict(int)
    for b, m in _character(ctx, lam):
        for c, n in _character(ctx, mu):
            prod[add(b, c)] += m * n
    return dict(prod)


def tensor_decompose_greedy(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """Oracle for tensor_decompose: strip highest weights off the product character."""
    rest = character_product(ctx, lam, mu)
    out = {}
    while rest:
        top = max((nu for nu in rest if is_dominant(nu)), key=lambda nu: height(ctx, nu))
        c = rest[top]
        if c < 0:
            raise ArithmeticError(f"greedy subtraction went negative at {top}")
        out[top] = c
        for nu, m in _character(ctx, top):
            left = rest.get(nu, 0) - c * m
            if left:
                rest[nu] = left
            else:
                del rest[nu]
    return dict(sorted(out.items()))


def decomp_to_json(terms: dict[Weight, int]) -> str:
    return json.dumps({format_weight(nu): c for nu, c in sorted(terms.items())})

