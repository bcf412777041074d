"""Command-line interface.

Exit codes: 0 success, 1 verification violation, 2 bad input, 3 size cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .blocks import BlockCache, n_g, verlinde_numeric
from .fusion import FusionTable, build_smatrix, fuse_multiset, fusion_coeff, fusion_json
from .harness import SweepConfig, run_sweep, verify_prv
from .lie_core import AlgebraCtx, CapExceeded, enumerate_alcove, format_weight, in_alcove, parse_weight
from .weyl import affine_weyl_words, fold_shifted, fold_unshifted, parse_word, prv_fold


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _weights(text: str | None, ctx: AlgebraCtx, alcove=True) -> list[tuple[int, ...]]:
    if text is None or not text.strip():
        return []
    try:
        out = [ctx.check_weight(parse_weight(part)) for part in text.split(";")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if alcove:
        for lam in out:
            if not in_alcove(ctx, lam):
                raise UsageError(f"{format_weight(lam)} is not in the level-{ctx.level} alcove")
    return out


def _ctx(args) -> AlgebraCtx:
    try:
        return AlgebraCtx(args.rank, args.level, max_rank=args.max_rank)
    except CapExceeded:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(payload, args, table_lines=None):
    if args.format == "table" and table_lines is not None:
        text = "\n".join(table_lines) + "\n"
    elif isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args):
    ctx = _ctx(args)
    weights = enumerate_alcove(ctx)
    payload = {"r": ctx.r, "level": ctx.level, "count": len(weights), "weights": [format_weight(w) for w in weights]}
    _emit(payload, args, [format_weight(w) for w in weights])
    return 0


def cmd_fuse(args):
    ctx = _ctx(args)
    weights = _weights(args.weights, ctx)
    table = FusionTable(ctx)
    if args.nu is not None:
        if len(weights) != 2:
            raise UsageError("--nu needs exactly two weights")
        nu = _weights(args.nu, ctx)[0]
        n = fusion_coeff(table, weights[0], weights[1], nu)
        _emit(fusion_json(ctx, weights[0], weights[1], nu, n), args, [str(n)])
        return 0
    product = fuse_multiset(table, weights)
    payload = {format_weight(nu): c for nu, c in product.items()}
    _emit(payload, args, [f"{format_weight(nu)}\t{c}" for nu, c in product.items()])
    return 0


def cmd_dim(args):
    if args.genus < 0:
        raise UsageError(f"genus must be >= 0, got {args.genus}")
    ctx = _ctx(args)
    weights = _weights(args.weights, ctx)
    n = n_g(BlockCache(), FusionTable(ctx), args.genus, weights)
    oracle = verlinde_numeric(build_smatrix(ctx), args.genus, weights)
    payload = {
        "r": ctx.r,
        "level": ctx.level,
        "genus": args.genus,
        "weights": [format_weight(w) for w in weights],
        "n": n,
        "oracle": oracle,
        "match": n == oracle,
    }
    _emit(payload, args, [f"n = {n}", f"oracle = {oracle}"])
    return 0 if n == oracle else 1


def cmd_fold(args):
    ctx = _ctx(args)
    (lam,) = _weights(args.weight, ctx, alcove=False)
    try:
        f = fold_shifted(ctx, lam) if args.shifted else fold_unshifted(ctx, lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"rep": format_weight(f.rep), "sign": f.sign, "on_wall": f.on_wall, "steps": f.steps}
    _emit(payload, args, [f"{k} = {v}" for k, v in payload.items()])
    return 0


def cmd_prv(args):
    ctx = _ctx(args)
    weights = _weights(args.weights, ctx)
    if len(weights) != 2:
        raise UsageError("prv needs exactly two weights")
    lam1, lam2 = weights
    table = FusionTable(ctx)
    if args.word is not None:
        try:
            w = parse_word(args.word)
            nu = prv_fold(ctx, lam1, lam2, w)
        except (ValueError, IndexError) as exc:
            raise UsageError(str(exc)) from None
        mult = table.fuse(lam1, lam2).get(nu, 0)
        payload = {"word": str(w), "component": format_weight(nu), "multiplicity": mult, "ok": mult >= 1}
        _emit(payload, args, [f"{format_weight(nu)}\t{mult}"])
        return 0 if mult >= 1 else 1
    report = verify_prv(table, lam1, lam2, affine_weyl_words(ctx, args.box))
    _emit(report.to_dict(), args)
    return 0 if report.ok else 1


def _sig12(x: float) -> float:
    return float(f"{x:.12g}") + 0.0


def cmd_smatrix(args):
    ctx = _ctx(args)
    S = build_smatrix(ctx)
    if args.format == "json":
        payload = {
            "r": ctx.r,
            "level": ctx.level,
            "weights": [format_weight(w) for w in S.weights],
            "re": [[_sig12(z.real) for z in row] for row in S.entries],
            "im": [[_sig12(z.imag) for z in row] for row in S.entries],
        }
        _emit(payload, args)
    else:
        _emit(S.to_csv(), args)
    return 0


def cmd_verify(args):
    try:
        config = SweepConfig(
            r_range=range(2, args.max_rank + 1),
            level_range=range(1, args.max_level + 1),
            genus_range=range(1, args.max_genus + 1),
            max_points=args.max_points,
            weyl_translation_box=args.box,
            max_cases=args.max_cases,
        )
    except CapExceeded:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_sweep(config, workers=args.jobs)
    text = report.to_json() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = f"cases={report.cases_checked} violations={len(report.violations)} complete={report.complete}"
    print(summary, file=sys.stderr)
    return 1 if report.violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slfusion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ctx_args(p, formats=("json", "table")):
        p.add_argument("--rank", "-r", type=int, required=True, help="r in SL(r)")
        p.add_argument("--level", "-l", type=int, required=True)
        p.add_argument("--max-rank", type=int, default=8, help="refuse r above this (exit 3)")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out")

    p = sub.add_parser("enumerate", help="list the level-ell alcove")
    ctx_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fuse", help="fusion product of ';'-separated weights")
    ctx_args(p)
    p.add_argument("--weights", default="")
    p.add_argument("--nu", help="report the single coefficient N_{lambda,mu}^nu")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("dim", help="conformal block dimension n_g")
    ctx_args(p)
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--weights", default="")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("fold", help="alcove representative of a weight")
    ctx_args(p)
    p.add_argument("--weight", required=True)
    p.add_argument("--shifted", action="store_true", help="rho-shifted signed folding at level ell+r")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("prv", help="PRV components of a fusion product")
    ctx_args(p)
    p.add_argument("--weights", required=True)
    p.add_argument("--word", help='e.g. "s1 s2 | 1,0"; omit to check all words in the box')
    p.add_argument("--box", type=int, default=1)
    p.set_defaults(func=cmd_prv)

    p = sub.add_parser("smatrix", help="dump the S-matrix (CSV by default)")
    ctx_args(p, formats=("csv", "json"))
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("verify", help="run the exhaustive sweep")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-level", type=int, default=3)
    p.add_argument("--max-genus", type=int, default=3)
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--box", type=int, default=1)
    p.add_argument("--max-cases", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"slfusion: error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"slfusion: cap exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
