import itertools

import pytest

from slfusion.blocks import BlockCache, block_key, n0_multipoint, n_g, n_g_split, verlinde_numeric
from slfusion.lie_core import AlgebraCtx, alcove_size


def multisets(alcove, max_points):
    for s in range(max_points + 1):
        yield from itertools.combinations_with_replacement(alcove, s)


def test_block_key_normalizes():
    assert block_key(2, [(1, 0), (0, 0), (0, 1)]) == (2, ((0, 1), (1, 0)))
    assert block_key(0, [(0,), (0,)]) == (0, ())


def test_multipoint_base_cases(tables):
    t = tables(2, 2)
    assert n0_multipoint(t, []) == 1
    assert n0_multipoint(t, [(0,)]) == 1
    assert n0_multipoint(t, [(1,)]) == 0
    assert n0_multipoint(t, [(1,), (1,)]) == 1
    assert n0_multipoint(t, [(1,), (2,)]) == 0
    t3 = tables(3, 2)
    assert n0_multipoint(t3, [(1, 0), (0, 1)]) == 1
    assert n0_multipoint(t3, [(1, 0), (1, 0)]) == 0


def test_four_point_sl2_level1(tables, smatrices):
    t = tables(2, 1)
    four = [(1,)] * 4
    assert n0_multipoint(t, four) == 1
    assert n0_multipoint(t, four, BlockCache()) == 1
    assert n_g_split(t, 0, four) == 1
    assert verlinde_numeric(smatrices(2, 1), 0, four) == 1


def test_genus_examples(tables, caches, smatrices):
    assert n_g(caches(2, 1), tables(2, 1), 1, []) == 2
    assert n_g(caches(3, 1), tables(3, 1), 1, []) == 3
    assert n_g(caches(2, 1), tables(2, 1), 2, []) == 4
    S = smatrices(2, 1)
    assert verlinde_numeric(S, 1, []) == 2
    assert verlinde_numeric(S, 0, [(1,), (1,)]) == 1
    # genus-2 sum of S_{0 mu}^{-2} with S_{0 mu} = 1/sqrt(2)
    assert verlinde_numeric(S, 2, []) == 4


def test_negative_genus(tables):
    with pytest.raises(ValueError):
        n_g(BlockCache(), tables(2, 1), -1, [])


def test_fusion_ring_dimension(tables, caches):
    for r in (2, 3, 4):
        for level in (0, 1, 2, 3):
            assert n_g(caches(r, level), tables(r, level), 1, []) == alcove_size(r, level)


@pytest.mark.parametrize("r, level", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_recursion_properties(tables, caches, smatrices, r, level):
    t, cache, S = tables(r, level), caches(r, level), smatrices(r, level)
    ctx = t.ctx
    memo = {}
    for g in range(3):
        for ws in multisets(ctx.alcove, 3):
            n = n_g(cache, t, g, ws)
            assert n == verlinde_numeric(S, g, ws)
            assert n == n_g_split(t, g, ws, memo)
            assert n_g_split(t, g, ws + (ctx.zero,), memo) == n
            assert verlinde_numeric(S, g, ws + (ctx.zero,)) == n
            for p in itertools.permutations(ws):
                assert n_g(cache, t, g, p) == n
            if g >= 1:
                assert n >= n_g(cache, t, g - 1, ws)


def test_cache_is_reproducible(tables):
    t = tables(3, 2)
    warm = BlockCache()
    values = {ws: n_g(warm, t, 2, ws) for ws in multisets(t.ctx.alcove, 2)}
    for ws, n in values.items():
        assert n_g(BlockCache(), t, 2, ws) == n
    assert warm.memo
