"""Exhaustive checks of the lower bound n_g >= (#P_ell)^(g-1) and the
constructions behind it (PRV components of fusion products, the one-point
partner weight, and the collapse of a multiset to a single weight)."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .blocks import BlockCache, n0_multipoint, n_g
from .fusion import FusionTable, fuse_multiset, n0_threept
from .lie_core import (
    AlgebraCtx,
    CapExceeded,
    DEFAULT_MAX_RANK,
    Weight,
    add,
    alcove_size,
    dual,
    format_weight,
    in_root_lattice,
    sub,
    to_root_coords,
)
from .weyl import WeylWord, affine_weyl_words, apply_word, fold_unshifted, prv_fold

PRV_STATUS = "verified on grid"


@dataclass
class SweepConfig:
    r_range: tuple[int, ...] = (2, 3)
    level_range: tuple[int, ...] = (1, 2, 3)
    genus_range: tuple[int, ...] = (1, 2, 3)
    max_points: int = 3
    weyl_translation_box: int = 1
    max_cases: int | None = None
    max_rank: int = DEFAULT_MAX_RANK

    def __post_init__(self):
        self.r_range = tuple(self.r_range)
        self.level_range = tuple(self.level_range)
        self.genus_range = tuple(self.genus_range)
        if any(r > self.max_rank for r in self.r_range):
            raise CapExceeded(f"r_range {self.r_range} exceeds rank cap {self.max_rank}")
        if any(g < 1 for g in self.genus_range):
            raise ValueError("genus_range must contain genera >= 1")
        if self.max_points < 0 or self.weyl_translation_box < 0:
            raise ValueError("max_points and weyl_translation_box must be >= 0")

    def contexts(self):
        for r in self.r_range:
            for level in self.level_range:
                yield AlgebraCtx(r, level, max_rank=self.max_rank)


@dataclass
class SweepReport:
    cases_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    observations: list[dict] = field(default_factory=list)
    complete: bool = True
    timing: float = 0.0
    prv_status: str = PRV_STATUS

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "SweepReport"):
        self.cases_checked += other.cases_checked
        self.violations += other.violations
        self.records += other.records
        self.observations += other.observations
        self.complete = self.complete and other.complete
        self.timing += other.timing

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("violations", "records", "observations"):
            d[k] = sorted(d[k], key=lambda rec: json.dumps(rec, sort_keys=True))
        d["timing"] = round(self.timing, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Budget:
    def __init__(self, report: SweepReport, limit: int | None):
        self.report = report
        self.limit = limit

    def tick(self) -> bool:
        if self.limit is not None and self.report.cases_checked >= self.limit:
            self.report.complete = False
            return False
        self.report.cases_checked += 1
        return True


def _fmt(weights) -> list[str]:
    return [format_weight(w) for w in weights]


# --- constructions -------------------------------------------------------------


def one_point_word(ctx: AlgebraCtx) -> WeylWord:
    """s_{r-1} ... s_2 s_1 (so s_1 acts first)."""
    return WeylWord(tuple(range(ctx.rank, 0, -1)))


def prv_partner_unfolded(ctx: AlgebraCtx, lam: Weight) -> Weight:
    """mu' = sum_i (n_i - n_{i-1}) omega_i where lam = sum_i n_i alpha_i."""
    if not in_root_lattice(ctx, lam):
        raise ValueError(f"{lam} is not in the root lattice")
    n = [0] + [int(c) for c in to_root_coords(ctx, lam)]
    return tuple(n[i] - n[i - 1] for i in range(1, ctx.r))


def prv_partner(ctx: AlgebraCtx, lam: Weight) -> Weight:
    """Alcove weight mu with V_mu inside V_lam (x)^F V_mu."""
    return fold_unshifted(ctx, prv_partner_unfolded(ctx, lam)).rep


def verify_eq3(ctx: AlgebraCtx, lam: Weight, mu_prime: Weight, w: WeylWord) -> bool:
    """lam == mu' - w mu'."""
    return tuple(lam) == sub(mu_prime, apply_word(ctx, w, mu_prime))


def collapse_chain(table: FusionTable, weights) -> Weight:
    """Fold the running sum after each new weight (inner Weyl elements = identity)."""
    ctx = table.ctx
    mu = ctx.zero
    for lam in weights:
        mu = fold_unshifted(ctx, add(mu, tuple(lam))).rep
    return mu


def verify_prv(table: FusionTable, lam1: Weight, lam2: Weight, words) -> SweepReport:
    ctx = table.ctx
    report = SweepReport()
    fused = table.fuse(lam1, lam2)
    for w in words:
        report.cases_checked += 1
        nu = prv_fold(ctx, lam1, lam2, w)
        if fused.get(nu, 0) < 1:
            report.violations.append(
                {
                    "check": "prv",
                    "r": ctx.r,
                    "level": ctx.level,
                    "lambda1": format_weight(lam1),
                    "lambda2": format_weight(lam2),
                    "word": str(w),
                    "component": format_weight(nu),
                }
            )
    return report


def prv_components(ctx: AlgebraCtx, lam1: Weight, lam2: Weight, box: int) -> set[Weight]:
    return {prv_fold(ctx, lam1, lam2, w) for w in affine_weyl_words(ctx, box)}


def bound_value(ctx: AlgebraCtx, g: int) -> int:
    return alcove_size(ctx.r, ctx.level) ** (g - 1)


def verify_bound(cache: BlockCache, table: FusionTable, g: int, weights) -> dict:
    """n_g(weights) >= (#P_ell)^(g-1), applicable when the weights sum into the root lattice."""
    if g < 1:
        raise ValueError("the bound is stated for genus >= 1")
    ctx = table.ctx
    total = ctx.zero
    for lam in weights:
        total = add(total, tuple(lam))
    n = n_g(cache, table, g, weights)
    bound = bound_value(ctx, g)
    return {
        "applicable": in_root_lattice(ctx, total),
        "holds": n >= bound,
        "n": n,
        "bound": bound,
    }


def chain_inequality_failures(cache, table, weights, collapsed) -> list[str]:
    ctx = table.ctx
    weights = [tuple(w) for w in weights]
    bad = []
    for nu in ctx.alcove:
        pair = [nu, dual(ctx, nu)]
        lhs = n0_multipoint(table, weights + pair, cache)
        rhs = n0_multipoint(table, [collapsed] + pair, cache)
        if lhs < rhs:
            bad.append(f"pair insertion at nu={format_weight(nu)}: {lhs} < {rhs}")
    n1_all = n_g(cache, table, 1, weights)
    n1_one = n_g(cache, table, 1, [collapsed])
    if n1_all < n1_one:
        bad.append(f"genus one: {n1_all} < {n1_one}")
    handle_sum = sum(n0_threept(table, collapsed, nu, dual(ctx, nu)) for nu in ctx.alcove)
    if handle_sum != n1_one:
        bad.append(f"handle sum: {handle_sum} != {n1_one}")
    return bad


def verify_chain_inequalities(cache, table, weights, collapsed) -> bool:
    return not chain_inequality_failures(cache, table, weights, collapsed)


# --- sweep ---------------------------------------------------------------------


def _sweep_context(ctx: AlgebraCtx, config: SweepConfig, table: FusionTable, budget_left):
    report = SweepReport()
    budget = _Budget(report, budget_left)
    cache = BlockCache()
    tag = {"r": ctx.r, "level": ctx.level}
    alcove = ctx.alcove

    def violate(check, **info):
        report.violations.append({"check": check, **tag, **info})

    # PRV for fusion, plus saturation of the translation box
    words = affine_weyl_words(ctx, config.weyl_translation_box)
    for lam1, lam2 in itertools.product(alcove, repeat=2):
        if not budget.tick():
            return report
        sub_report = verify_prv(table, lam1, lam2, words)
        report.cases_checked += sub_report.cases_checked
        report.violations += sub_report.violations
        small = {prv_fold(ctx, lam1, lam2, w) for w in words}
        wider = prv_components(ctx, lam1, lam2, config.weyl_translation_box + 1)
        if small != wider:
            violate("prv_saturation", lambda1=format_weight(lam1), lambda2=format_weight(lam2))

    # one marked point
    for lam in alcove:
        if not in_root_lattice(ctx, lam):
            continue
        if not budget.tick():
            return report
        mu_prime = prv_partner_unfolded(ctx, lam)
        mu = prv_partner(ctx, lam)
        if not verify_eq3(ctx, lam, mu_prime, one_point_word(ctx)):
            violate("one_point_word", weight=format_weight(lam), mu_prime=format_weight(mu_prime))
        if n0_threept(table, lam, mu, dual(ctx, mu)) < 1:
            violate("one_point_partner", weight=format_weight(lam), mu=format_weight(mu))
        if n_g(cache, table, 1, [lam]) <= 0:
            violate("n1_positive", weights=[format_weight(lam)])

    multisets = [
        ws
        for s in range(config.max_points + 1)
        for ws in itertools.combinations_with_replacement(alcove, s)
    ]
    for ws in multisets:
        if not budget.tick():
            return report
        total = ctx.zero
        for lam in ws:
            total = add(total, lam)
        rooted = in_root_lattice(ctx, total)
        if rooted:
            collapsed = collapse_chain(table, ws)
            if not in_root_lattice(ctx, collapsed):
                violate("collapse_root_lattice", weights=_fmt(ws))
            if fuse_multiset(table, ws).get(collapsed, 0) < 1:
                violate("collapse_in_product", weights=_fmt(ws), collapsed=format_weight(collapsed))
            for msg in chain_inequality_failures(cache, table, ws, collapsed):
                violate("chain", weights=_fmt(ws), detail=msg)
            if n_g(cache, table, 1, ws) <= 0:
                violate("n1_positive", weights=_fmt(ws))
        for g in config.genus_range:
            rec = verify_bound(cache, table, g, ws)
            prev = n_g(cache, table, g - 1, ws)
            if rec["n"] < prev:
                violate("genus_monotone", genus=g, weights=_fmt(ws), n=rec["n"], previous=prev)
            entry = {
                **tag,
                "genus": g,
                "weights": _fmt(ws),
                "n": rec["n"],
                "bound": rec["bound"],
                "margin": rec["n"] - rec["bound"],
            }
            if rec["applicable"]:
                report.records.append(entry)
                if not rec["holds"]:
                    violate("bound", genus=g, weights=_fmt(ws), n=rec["n"], bound=rec["bound"])
            else:
                # outside the hypothesis: recorded, never asserted
                report.observations.append({**entry, "bound_holds": rec["holds"]})
    return report


def _run_one(args):
    ctx, config = args
    t0 = time.perf_counter()
    report = _sweep_context(ctx, config, FusionTable(ctx), config.max_cases)
    report.timing = time.perf_counter() - t0
    return report


def run_sweep(config: SweepConfig, table_factory=None, workers: int = 1, out=None) -> SweepReport:
    """Run every check over the configured grid; optionally write the report as JSON.

    ``table_factory(ctx)`` replaces the fusion table, which is how tests
    inject a corrupted one.  ``max_cases`` caps the total work; hitting it
    leaves ``complete`` False.
    """
    t0 = time.perf_counter()
    report = SweepReport()
    contexts = list(config.contexts())
    if workers > 1 and table_factory is None and config.max_cases is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_one, [(ctx, config) for ctx in contexts]):
                report.merge(part)
    else:
        for ctx in contexts:
            left = None if config.max_cases is None else config.max_cases - report.cases_checked
            table = table_factory(ctx) if table_factory else FusionTable(ctx)
            part = _sweep_context(ctx, config, table, left)
            report.merge(part)
            if not part.complete:
                break
    report.timing = time.perf_counter() - t0
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return report
