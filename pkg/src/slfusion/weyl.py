"""Finite and affine Weyl group actions and alcove folding.

Two foldings share one engine:

* unshifted: the orbit of a weight under W extended by translations in
  ``level * Q``, with representative in the level-``ell`` alcove;
* shifted: ``lam + rho`` folded at level ``ell + r`` with signs
  (``affine=False`` drops the affine wall, which is Racah-Speiser folding).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .lie_core import AlgebraCtx, Weight, add, from_root_coords, scale, sub


@dataclass(frozen=True)
class WeylWord:
    """s_{i_1} s_{i_2} ... s_{i_k} followed by a translation.

    ``letters`` act right to left.  ``translation`` is in root coordinates and
    is applied after the letters, scaled by the level.
    """

    letters: tuple[int, ...] = ()
    translation: tuple[int, ...] | None = None

    def __str__(self):
        head = " ".join(f"s{i}" for i in self.letters)
        if self.translation is None:
            return head
        return f"{head} | {','.join(str(t) for t in self.translation)}".lstrip()


def parse_word(text: str) -> WeylWord:
    """Parse ``"s1 s2 | 1,0"``; both halves are optional."""
    head, _, tail = text.partition("|")
    letters = []
    for tok in head.split():
        if not tok.startswith("s") or not tok[1:].isdigit():
            raise ValueError(f"bad Weyl letter {tok!r}")
        letters.append(int(tok[1:]))
    translation = None
    if tail.strip():
        try:
            translation = tuple(int(t) for t in tail.split(","))
        except ValueError:
            raise ValueError(f"bad translation {tail.strip()!r}") from None
    return WeylWord(tuple(letters), translation)


@dataclass(frozen=True)
class FoldResult:
    rep: Weight
    sign: int
    on_wall: bool
    steps: int


def simple_reflect(ctx: AlgebraCtx, i: int, lam: Weight) -> Weight:
    if not 1 <= i <= ctx.rank:
        raise IndexError(f"simple reflection index {i} out of range 1..{ctx.rank}")
    a = lam[i - 1]
    if a == 0:
        return lam
    return sub(lam, scale(a, ctx.simple_root(i)))


def affine_reflect(ctx: AlgebraCtx, lam: Weight, level: int) -> Weight:
    """s_0 at the given level: lam -> w_theta(lam) + level*theta."""
    return sub(lam, scale(sum(lam) - level, ctx.theta_labels))


def apply_word(ctx: AlgebraCtx, w: WeylWord, lam: Weight) -> Weight:
    for i in reversed(w.letters):
        lam = simple_reflect(ctx, i, lam)
    if w.translation is not None:
        if len(w.translation) != ctx.rank:
            raise ValueError(f"translation {w.translation} must have {ctx.rank} entries")
        lam = add(lam, scale(ctx.level, from_root_coords(ctx, w.translation)))
    return lam


def finite_weyl_words(ctx: AlgebraCtx) -> list[WeylWord]:
    """One word per element of W (r! of them), found via the orbit of rho."""
    start = ctx.rho
    seen = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(1, ctx.r):
                y = simple_reflect(ctx, i, x)
                if y not in seen:
                    seen[y] = (i,) + seen[x]
                    nxt.append(y)
        frontier = nxt
    return [WeylWord(letters) for _, letters in sorted(seen.items())]


def affine_weyl_words(ctx: AlgebraCtx, box: int) -> list[WeylWord]:
    """W times translations in {-box..box}^{r-1}."""
    finite = finite_weyl_words(ctx)
    shifts = itertools.product(range(-box, box + 1), repeat=ctx.rank)
    return [WeylWord(w.letters, t) for t in shifts for w in finite]


def _greedy(candidates, x):
    return candidates[0]


def _fold(ctx: AlgebraCtx, x: Weight, bound: int | None, pick=_greedy, max_steps=100_000):
    """Fold ``x`` into {labels >= 0, sum <= bound}; returns (point, steps).

    Candidates are the indices of violated walls, 0 standing for the affine
    one.  Any reflection in a violated wall strictly reduces the number of
    hyperplanes separating ``x`` from the alcove, so every strategy stops.
    """
    steps = 0
    while True:
        candidates = [i for i, a in enumerate(x, start=1) if a < 0]
        if bound is not None and sum(x) > bound:
            candidates.append(0)
        if not candidates:
            return x, steps
        i = pick(candidates, x)
        x = affine_reflect(ctx, x, bound) if i == 0 else simple_reflect(ctx, i, x)
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f"folding did not terminate for {x}")


def fold_unshifted(ctx: AlgebraCtx, lam: Weight, pick=_greedy) -> FoldResult:
    """Representative of lam in the level-ell alcove under W and level*Q translations."""
    if ctx.level == 0:
        # the translation lattice collapses, so only 0 has a level-0 representative
        if any(lam):
            raise ValueError(f"weight {lam} has no representative in the level-0 alcove")
        return FoldResult(lam, 1, False, 0)
    x, steps = _fold(ctx, lam, ctx.level, pick)
    return FoldResult(x, (-1) ** steps, False, steps)


def fold_shifted(ctx: AlgebraCtx, lam: Weight, affine: bool = True, pick=_greedy) -> FoldResult:
    """Fold lam + rho at level ell + r (or under W alone when ``affine`` is False).

    A point fixed by some reflection lands on a wall; then ``on_wall`` is set
    and ``sign`` is 0, so that signed accumulation drops it automatically.
    """
    bound = ctx.kappa if affine else None
    x, steps = _fold(ctx, add(lam, ctx.rho), bound, pick)
    on_wall = any(a == 0 for a in x) or (affine and sum(x) == bound)
    sign = 0 if on_wall else (-1) ** steps
    return FoldResult(sub(x, ctx.rho), sign, on_wall, steps)


def random_picker(rng: random.Random):
    """Strategy choosing uniformly among violated walls; used to test well-definedness."""

    def pick(candidates, x):
        return rng.choice(candidates)

    return pick


def dominant_conjugate(ctx: AlgebraCtx, lam: Weight) -> Weight:
    """The dominant element of the finite W-orbit of lam."""
    x, _ = _fold(ctx, lam, None)
    return x


def prv_fold(ctx: AlgebraCtx, lam1: Weight, lam2: Weight, w: WeylWord) -> Weight:
    """The alcove representative of lam1 + w lam2."""
    return fold_unshifted(ctx, add(lam1, apply_word(ctx, w, lam2))).rep
