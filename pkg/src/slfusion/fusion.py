"""The level-ell fusion ring of sl(r).

Structure constants N_{lam,mu}^nu come from Kac-Walton folding of classical
tensor products.  The S-matrix built here is only a floating-point oracle for
cross-checking them.
"""

from __future__ import annotations

import csv
import io
import itertools
import threading
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .lie_core import AlgebraCtx, CapExceeded, Weight, dual, format_weight, in_alcove
from .reps import tensor_decompose, weight_multiplicities
from .weyl import fold_shifted

INTEGRALITY_TOL = 1e-6
UNITARITY_TOL = 1e-9
SMATRIX_MAX_ALCOVE = 10_000


class NonIntegralError(ArithmeticError):
    """A Verlinde sum did not land within tolerance of an integer."""


@dataclass
class FusionTable:
    """Lazily filled rows (lam, mu) -> {nu: N_{lam,mu}^nu}.

    Racing fills compute identical rows, so the lock only guards the dict write.
    """

    ctx: AlgebraCtx
    rows: dict[tuple[Weight, Weight], dict[Weight, int]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def row(self, lam: Weight, mu: Weight) -> dict[Weight, int]:
        key = (lam, mu)
        hit = self.rows.get(key)
        if hit is None:
            hit = kac_walton(self.ctx, lam, mu)
            with self._lock:
                self.rows.setdefault(key, hit)
        return hit

    def fuse(self, lam: Weight, mu: Weight) -> dict[Weight, int]:
        """V_lam (x)^F V_mu as {nu: multiplicity}."""
        return self.row(lam, mu)


def _check_alcove(ctx, *weights):
    for lam in weights:
        if len(lam) != ctx.rank or not in_alcove(ctx, lam):
            raise ValueError(f"{lam} is not in the level-{ctx.level} alcove for r={ctx.r}")


def kac_walton(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> dict[Weight, int]:
    _check_alcove(ctx, lam, mu)
    acc: dict[Weight, int] = defaultdict(int)
    for nu, c in tensor_decompose(ctx, lam, mu).items():
        f = fold_shifted(ctx, nu)
        if not f.on_wall:
            acc[f.rep] += f.sign * c
    out = {nu: n for nu, n in sorted(acc.items()) if n}
    if any(n < 0 for n in out.values()):
        raise ArithmeticError(f"negative fusion coefficient in {lam} x {mu}: {out}")
    return out


def fusion_coeff(table: FusionTable, lam: Weight, mu: Weight, nu: Weight) -> int:
    _check_alcove(table.ctx, nu)
    return table.row(lam, mu).get(nu, 0)


def n0_threept(table: FusionTable, lam: Weight, mu: Weight, nu: Weight) -> int:
    """Genus-0 three-point block dimension n_0(lam, mu, nu) = N_{lam,mu}^{nu*}."""
    return fusion_coeff(table, lam, mu, dual(table.ctx, nu))


def fuse_vector(table: FusionTable, vec: dict[Weight, int], lam: Weight) -> dict[Weight, int]:
    """(sum_k c_k V_k) (x)^F V_lam."""
    out: dict[Weight, int] = defaultdict(int)
    for kappa, c in vec.items():
        for nu, n in table.row(kappa, lam).items():
            out[nu] += c * n
    return dict(sorted(out.items()))


def fuse_multiset(table: FusionTable, weights) -> dict[Weight, int]:
    """Left-to-right fusion product of the given alcove weights."""
    vec = {table.ctx.zero: 1}
    for lam in weights:
        vec = fuse_vector(table, vec, tuple(lam))
    return vec


# --- Verlinde S-matrix oracle ------------------------------------------------


def _eps_coords(ctx: AlgebraCtx, lam: Weight) -> np.ndarray:
    """Orthonormal coordinates of lam, traceless, so that dot = normalized form."""
    x = np.array([sum(lam[i:]) for i in range(ctx.rank)] + [0], dtype=float)
    return x - x.mean()


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class SMatrix:
    ctx: AlgebraCtx
    entries: np.ndarray
    weights: tuple[Weight, ...]

    @property
    def kappa(self) -> int:
        return self.ctx.kappa

    def index(self, lam: Weight) -> int:
        return self.ctx.alcove_index[tuple(lam)]

    def __getitem__(self, key):
        lam, mu = key
        return self.entries[self.index(lam), self.index(mu)]

    def unitarity_defect(self) -> float:
        S = self.entries
        return float(np.max(np.abs(S @ S.conj().T - np.eye(len(S)))))

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "mu", "re", "im"])
        for i, lam in enumerate(self.weights):
            for j, mu in enumerate(self.weights):
                z = self.entries[i, j]
                w.writerow([format_weight(lam), format_weight(mu), f"{z.real + 0.0:.12g}", f"{z.imag + 0.0:.12g}"])
        return buf.getvalue()


def build_smatrix(ctx: AlgebraCtx) -> SMatrix:
    """S via the alternating sum over W (permutations of the r coordinates).

    The overall constant is fixed by making row 0 a unit vector with S_00 > 0.
    """
    weights = ctx.alcove
    if len(weights) > SMATRIX_MAX_ALCOVE:
        raise CapExceeded(f"alcove of size {len(weights)} exceeds S-matrix cap {SMATRIX_MAX_ALCOVE}")
    shifted = np.array([_eps_coords(ctx, tuple(a + 1 for a in lam)) for lam in weights])
    raw = np.zeros((len(weights), len(weights)), dtype=complex)
    for p in itertools.permutations(range(ctx.r)):
        pairing = shifted[:, list(p)] @ shifted.T
        raw += _perm_sign(p) * np.exp(-2j * np.pi * pairing / ctx.kappa)
    norm = np.linalg.norm(raw[0])
    phase = raw[0, 0] / abs(raw[0, 0])
    entries = raw / (norm * phase)
    return SMatrix(ctx, entries, weights)


def smatrix_ratio_via_character(ctx: AlgebraCtx, lam: Weight, mu: Weight) -> complex:
    """S_{lam,mu}/S_{0,mu} as the character of V_lam at exp(-2 pi i (mu+rho)/kappa)."""
    point = _eps_coords(ctx, tuple(a + 1 for a in mu))
    total = 0j
    for beta, m in weight_multiplicities(ctx, lam).items():
        total += m * np.exp(-2j * np.pi * float(_eps_coords(ctx, beta) @ point) / ctx.kappa)
    return complex(total)


def round_checked(z: complex, what: str) -> int:
    n = round(z.real)
    dev = max(abs(z.real - n), abs(z.imag))
    if dev > INTEGRALITY_TOL:
        raise NonIntegralError(f"{what} = {z} is {dev:.3g} away from an integer")
    return int(n)


def fusion_coeff_numeric(smatrix: SMatrix, lam: Weight, mu: Weight, nu: Weight) -> int:
    """sum_s S_{lam,s} S_{mu,s} S_{nu,s} / S_{0,s}, i.e. n_0(lam, mu, nu)."""
    S = smatrix.entries
    i, j, k = (smatrix.index(x) for x in (lam, mu, nu))
    z = np.sum(S[i] * S[j] * S[k] / S[0])
    return round_checked(complex(z), f"Verlinde sum for {lam},{mu},{nu}")


def verlinde_raw_deviation(smatrix: SMatrix, lam: Weight, mu: Weight, nu: Weight) -> float:
    S = smatrix.entries
    i, j, k = (smatrix.index(x) for x in (lam, mu, nu))
    z = complex(np.sum(S[i] * S[j] * S[k] / S[0]))
    return max(abs(z.real - round(z.real)), abs(z.imag))


def fusion_json(ctx: AlgebraCtx, lam: Weight, mu: Weight, nu: Weight, n: int) -> dict:
    return {
        "r": ctx.r,
        "level": ctx.level,
        "lambda": format_weight(lam),
        "mu": format_weight(mu),
        "nu": format_weight(nu),
        "N": n,
    }

