import itertools
import json
from collections import Counter

import pytest

from slfusion.lie_core import AlgebraCtx, dual, is_dominant
from slfusion.reps import (
    decomp_to_json,
    tensor_decompose,
    tensor_decompose_greedy,
    weight_multiplicities,
    weyl_dim,
)
from slfusion.weyl import finite_weyl_words, apply_word


def ssyt_character(r, lam):
    """Weights of V_lam by brute-force semistandard tableaux (Kostka numbers)."""
    shape = [sum(lam[i:]) for i in range(len(lam))]
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    counts = Counter()

    def fill(k, tab):
        if k == len(cells):
            content = [0] * (r + 1)
            for v in tab.values():
                content[v] += 1
            counts[tuple(content[i] - content[i + 1] for i in range(1, r))] += 1
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, tab[(i, j - 1)])
        if i > 0:
            lo = max(lo, tab[(i - 1, j)] + 1)
        for v in range(lo, r + 1):
            tab[(i, j)] = v
            fill(k + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return dict(counts)


def test_character_examples():
    assert weight_multiplicities(AlgebraCtx(2, 1), (2,)) == {(2,): 1, (0,): 1, (-2,): 1}
    adj = weight_multiplicities(AlgebraCtx(3, 1), (1, 1))
    assert adj[(0, 0)] == 2 and sum(adj.values()) == 8
    for r in (2, 3, 5):
        ctx = AlgebraCtx(r, 1)
        assert weight_multiplicities(ctx, ctx.zero) == {ctx.zero: 1}


@pytest.mark.parametrize("r", [2, 3, 4])
def test_character_matches_tableaux(r):
    bound = {2: 5, 3: 3, 4: 2}[r]
    ctx = AlgebraCtx(r, 1)
    for lam in itertools.product(range(bound + 1), repeat=r - 1):
        if sum(lam) > bound + 1:
            continue
        assert weight_multiplicities(ctx, lam) == ssyt_character(r, lam), lam


def test_character_weyl_invariant_and_mass():
    for r, lam in [(3, (2, 1)), (4, (1, 0, 2)), (4, (1, 1, 1)), (5, (1, 0, 0, 1))]:
        ctx = AlgebraCtx(r, 1)
        char = weight_multiplicities(ctx, lam)
        assert sum(char.values()) == weyl_dim(ctx, lam)
        for w in finite_weyl_words(ctx):
            for mu, m in char.items():
                assert char[apply_word(ctx, w, mu)] == m


def test_weyl_dim_examples():
    assert weyl_dim(AlgebraCtx(2, 1), (1,)) == 2
    assert weyl_dim(AlgebraCtx(3, 1), (1, 0)) == 3
    assert weyl_dim(AlgebraCtx(3, 1), (1, 1)) == 8
    # (p+1)(q+1)(p+q+2)/2 for sl(3)
    for p, q in itertools.product(range(6), repeat=2):
        assert weyl_dim(AlgebraCtx(3, 1), (p, q)) == (p + 1) * (q + 1) * (p + q + 2) // 2
    with pytest.raises(ValueError):
        weyl_dim(AlgebraCtx(3, 1), (-1, 0))


def test_tensor_examples():
    assert tensor_decompose(AlgebraCtx(2, 1), (1,), (1,)) == {(0,): 1, (2,): 1}
    assert tensor_decompose(AlgebraCtx(3, 1), (1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    for r, lam in [(2, (3,)), (3, (2, 1)), (4, (0, 1, 0))]:
        ctx = AlgebraCtx(r, 1)
        assert tensor_decompose(ctx, lam, ctx.zero) == {lam: 1}
        assert tensor_decompose(ctx, ctx.zero, lam) == {lam: 1}


def _grid(r, top):
    return list(itertools.product(range(top + 1), repeat=r - 1))


@pytest.mark.parametrize("r", [2, 3])
def test_tensor_symmetry_and_dimension(r):
    ctx = AlgebraCtx(r, 1)
    weights = _grid(r, 3)
    for lam, mu in itertools.combinations_with_replacement(weights, 2):
        dec = tensor_decompose(ctx, lam, mu)
        assert dec == tensor_decompose(ctx, mu, lam)
        assert all(c > 0 and is_dominant(nu) for nu, c in dec.items())
        assert sum(c * weyl_dim(ctx, nu) for nu, c in dec.items()) == weyl_dim(ctx, lam) * weyl_dim(ctx, mu)


@pytest.mark.parametrize("r", [2, 3])
def test_tensor_matches_greedy_oracle(r):
    ctx = AlgebraCtx(r, 1)
    weights = _grid(r, 2)
    for lam, mu in itertools.product(weights, repeat=2):
        assert tensor_decompose(ctx, lam, mu) == tensor_decompose_greedy(ctx, lam, mu)


def test_trivial_summand_iff_dual():
    for r in (2, 3, 4):
        ctx = AlgebraCtx(r, 1)
        weights = _grid(r, 2 if r < 4 else 1)
        for lam, mu in itertools.product(weights, repeat=2):
            c0 = tensor_decompose(ctx, lam, mu).get(ctx.zero, 0)
            assert c0 == (1 if mu == dual(ctx, lam) else 0)


def test_decomp_json():
    dec = tensor_decompose(AlgebraCtx(3, 1), (1, 0), (0, 1))
    assert json.loads(decomp_to_json(dec)) == {"0,0": 1, "1,1": 1}


def test_nondominant_rejected():
    with pytest.raises(ValueError):
        weight_multiplicities(AlgebraCtx(3, 1), (1, -1))
    with pytest.raises(ValueError):
        tensor_decompose(AlgebraCtx(3, 1), (1, -1), (0, 0))
