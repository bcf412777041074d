"""Exact computations in the level-ell fusion ring of sl(r)."""

from .lie_core import AlgebraCtx, alcove_size, dual, enumerate_alcove, in_root_lattice
from .fusion import FusionTable, build_smatrix, fuse_multiset, fusion_coeff, n0_threept
from .blocks import BlockCache, n_g, verlinde_numeric

__all__ = [
    "AlgebraCtx",
    "BlockCache",
    "FusionTable",
    "alcove_size",
    "build_smatrix",
    "dual",
    "enumerate_alcove",
    "fuse_multiset",
    "fusion_coeff",
    "in_root_lattice",
    "n0_threept",
    "n_g",
    "verlinde_numeric",
]
