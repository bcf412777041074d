"""Weight and root lattice arithmetic for sl(r).

Weights are plain tuples of Dynkin labels ``(a_1, ..., a_{r-1})``.  Nothing
here touches floating point; inverse Cartan data is kept as ``Fraction``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

Weight = tuple[int, ...]
RootCoords = tuple[Fraction, ...]

DEFAULT_MAX_RANK = 8


class CapExceeded(ValueError):
    """Raised when an input exceeds a configured size cap."""


@dataclass(frozen=True)
class AlgebraCtx:
    """The pair (r, level) with cached Cartan data for sl(r)."""

    r: int
    level: int
    max_rank: int = field(default=DEFAULT_MAX_RANK, compare=False, repr=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        if self.r > self.max_rank:
            raise CapExceeded(f"r={self.r} exceeds the rank cap {self.max_rank}")

    @property
    def rank(self) -> int:
        """Lie rank, i.e. the number of Dynkin labels."""
        return self.r - 1

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n))
            for i in range(n)
        )

    @cached_property
    def cartan_inv(self) -> tuple[tuple[Fraction, ...], ...]:
        # closed form for type A: (A^-1)_{ij} = min(i, j) - i*j/r, 1-based
        r = self.r
        return tuple(
            tuple(Fraction(min(i, j)) - Fraction(i * j, r) for j in range(1, r))
            for i in range(1, r)
        )

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def theta_labels(self) -> Weight:
        if self.r == 2:
            return (2,)
        return (1,) + (0,) * (self.r - 3) + (1,)

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def kappa(self) -> int:
        """Shifted level ell + r (the dual Coxeter number of sl(r) is r)."""
        return self.level + self.r

    def simple_root(self, i: int) -> Weight:
        """Labels of the simple root alpha_i (1-based), i.e. row i of the Cartan matrix."""
        return self.cartan[i - 1]

    def check_weight(self, lam) -> Weight:
        lam = tuple(int(a) for a in lam)
        if len(lam) != self.rank:
            raise ValueError(f"weight {lam} must have {self.rank} labels for r={self.r}")
        return lam

    @cached_property
    def alcove(self) -> tuple[Weight, ...]:
        return tuple(enumerate_alcove(self))

    @cached_property
    def alcove_index(self) -> dict[Weight, int]:
        return {lam: k for k, lam in enumerate(self.alcove)}


def parse_weight(text: str) -> Weight:
    """Parse ``"1,0,2"`` into ``(1, 0, 2)``."""
    text = text.strip()
    if not text:
        raise ValueError("empty weight string")
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"malformed weight {text!r}") from None


def format_weight(lam: Weight) -> str:
    return ",".join(str(a) for a in lam)


def add(lam: Weight, mu: Weight) -> Weight:
    return tuple(a + b for a, b in zip(lam, mu))


def sub(lam: Weight, mu: Weight) -> Weight:
    return tuple(a - b for a, b in zip(lam, mu))


def scale(k: int, lam: Weight) -> Weight:
    return tuple(k * a for a in lam)


def theta_pairing(ctx: AlgebraCtx, lam: Weight) -> int:
    """lambda(H_theta); every comark of sl(r) is 1, so this is the label sum."""
    return sum(lam)


def is_dominant(lam: Weight) -> bool:
    return all(a >= 0 for a in lam)


def in_alcove(ctx: AlgebraCtx, lam: Weight) -> bool:
    return is_dominant(lam) and theta_pairing(ctx, lam) <= ctx.level


def enumerate_alcove(ctx: AlgebraCtx) -> list[Weight]:
    """All dominant weights of level at most ell, in lexicographic order."""
    out = [
        lam
        for lam in itertools.product(range(ctx.level + 1), repeat=ctx.rank)
        if sum(lam) <= ctx.level
    ]
    out.sort()
    return out


def alcove_size(r: int, level: int) -> int:
    """(level + r - 1)! / (level! (r - 1)!)."""
    return comb(level + r - 1, r - 1)


def dual(ctx: AlgebraCtx, lam: Weight) -> Weight:
    """lambda* = -w_0 lambda, which for sl(r) reverses the labels."""
    return tuple(reversed(lam))


def to_root_coords(ctx: AlgebraCtx, lam: Weight) -> RootCoords:
    inv = ctx.cartan_inv
    return tuple(sum(inv[i][j] * lam[j] for j in range(ctx.rank)) for i in range(ctx.rank))


def from_root_coords(ctx: AlgebraCtx, coords) -> Weight:
    """Dynkin labels of sum n_i alpha_i; coordinates must yield integral labels."""
    A = ctx.cartan
    if all(isinstance(c, int) for c in coords):
        return tuple(sum(A[i][j] * coords[j] for j in range(ctx.rank)) for i in range(ctx.rank))
    labels =[sum(A[i][j] * Fraction(coords[j]) for j in range(ctx.rank)) for i in range(ctx.rank)]
    if any(x.denominator != 1 for x in labels):
        raise ValueError(f"root coordinates {coords} do not give an integral weight")
    return tuple(int(x) for x in labels)


def congruence_class(ctx: AlgebraCtx, lam: Weight) -> int:
    """The Z_r charge sum_i i*a_i mod r."""
    return sum(i * a for i, a in enumerate(lam, start=1)) % ctx.r


def in_root_lattice(ctx: AlgebraCtx, lam: Weight) -> bool:
    integral = all(c.denominator == 1 for c in to_root_coords(ctx, lam))
    # both tests must agree; a mismatch means the inverse Cartan data is wrong
    assert integral == (congruence_class(ctx, lam) == 0), lam
    return integral


def inner(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> Fraction:
    """Normalized invariant form, (theta|theta) = 2, in label coordinates."""
    inv = ctx.cartan_inv
    n = ctx.rank
    return sum(lam[i] * inv[i][j] * mu[j] for i in range(n) for j in range(n) if lam[i] and mu[j])


def height(ctx: AlgebraCtx, lam: Weight) -> Fraction:
    """Sum of root coordinates; strictly decreases along lam -> lam - alpha."""
    return sum(to_root_coords(ctx, lam))


def positive_roots(ctx: AlgebraCtx) -> list[Weight]:
    """alpha_i + ... + alpha_{j-1} for 1 <= i < j <= r, as Dynkin labels."""
    roots = []
    for i in range(1, ctx.r):
        acc = ctx.zero
        for j in range(i, ctx.r):
            acc = add(acc, ctx.simple_root(j))
            roots.append(acc)
    return roots
