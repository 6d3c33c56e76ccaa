"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from . import classify, fractal, gfun, levelset, repsys, specfile, verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational or decimal: {text!r}") from None


def _spec(args) -> gfun.FunctionSpec:
    if args.spec is None:
        raise UsageError("--spec is required for this command")
    try:
        return specfile.load_spec(args.spec)
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
    except specfile.SpecError as exc:
        raise UsageError(f"{args.spec}: {exc}") from None


def _word(text: str) -> repsys.Word:
    try:
        return repsys.as_word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_classify(args, out):
    f = _spec(args)
    regime = classify.classify_regime(f.eps)
    out.write(f"regime: {regime.tag.value}\n")
    names = [f"preamble[{i}]" for i in range(len(f.eps.preamble))]
    names += [f"period[{i}]" for i in range(len(f.eps.period))]
    sign = {1: "+", 0: "0", -1: "-"}
    for name, eps, s in zip(names, f.eps.values(), regime.per_index):
        out.write(f"  {name:<14} eps={str(eps):<8} sign(g1)={sign[s]}\n")


def cmd_eval(args, out):
    f = _spec(args)
    if args.seq is not None:
        try:
            x = repsys.DigitSeq.parse(args.seq)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.write(f"{gfun.eval_exact(f, x)}\n")
        return
    if args.x is None:
        raise UsageError("eval needs --x or --seq")
    x = _rational_arg(args.x)
    if not 0 <= x <= 1:
        raise UsageError(f"x = {x} outside [0, 1]")
    if args.tol is not None:
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        out.write(f"{gfun.eval_approx(f, float(x), args.tol)!r}\n")
        return
    try:
        y = gfun.eval_at(f, x, depth=args.depth)
    except ValueError:
        raise UsageError(f"no periodic expansion of {x} within {args.depth} digits; pass --tol") from None
    out.write(f"{y}\n")


def cmd_encode(args, out):
    f = _spec(args)
    x = _rational_arg(args.x)
    if not 0 <= x <= 1:
        raise UsageError(f"x = {x} outside [0, 1]")
    enc = repsys.encode(f.x_schedule, x, args.depth)
    out.write(f"word:  {repsys.word_str(enc.word)}\n")
    out.write(f"exact: {'yes' if enc.exact else 'no'}\n")
    if enc.full is not None:
        out.write(f"full:  {enc.full}\n")


def cmd_increment(args, out):
    f = _spec(args)
    out.write(f"{gfun.increment(f, _word(args.word))}\n")


def cmd_range(args, out):
    f = _spec(args)
    w = _word(args.word)
    r = gfun.range_on_cylinder(f, w)
    left, right = gfun.x_cylinder(f, w)
    out.write(f"cylinder: [{left}, {right}]\n")
    out.write(f"min: {r.lo} at {r.argmin_at.value}\n")
    out.write(f"max: {r.hi} at {r.argmax_at.value}\n")


def cmd_levelset(args, out):
    f = _spec(args)
    y0 = _rational_arg(args.y)
    regions = levelset.preimage_regions(f, y0, args.depth)
    out.write(f"{'word':<{args.depth + 2}} {'x_left':>24} {'x_right':>24}  witness\n")
    for r in regions:
        out.write(
            f"{repsys.word_str(r.word):<{args.depth + 2}} {str(r.x_interval[0]):>24} "
            f"{str(r.x_interval[1]):>24}  {r.witness.value}\n"
        )
    out.write(f"regions: {len(regions)}\n")
    out.write(f"root count lower bound: {levelset.root_count_lower_bound(f, y0, args.depth)}\n")


def _render(q: Fraction, args) -> str:
    if args.exact:
        return f"{q.numerator}/{q.denominator}"
    return f"{float(q):.{args.digits}g}"


def cmd_graph(args, out):
    f = _spec(args)
    try:
        sample = fractal.graph_sample(f, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fh = out if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y"])
        for x, y in sample.points:
            writer.writerow([_render(x, args), _render(y, args)])
    finally:
        if fh is not out:
            fh.close()


def cmd_ifs(args, out):
    f = _spec(args)
    try:
        maps = fractal.ifs_maps(f)
    except (fractal.NonConstantSchedule, fractal.DegenerateMap) as exc:
        raise UsageError(f"{exc.__class__.__name__}: {exc}") from None
    for i, m in enumerate(maps):
        out.write(f"phi_{i}: x' = {m.qx}*x + {m.bx},  y' = {m.gy}*y + {m.dy}\n")


def cmd_dimension(args, out):
    f = _spec(args)
    try:
        scales = [int(s) for s in args.scales.split(",") if s.strip()]
        estimate, counts = fractal.box_dimension(f, scales)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for n, c in counts:
        out.write(f"n={n:<6} boxes={c}\n")
    out.write(f"estimate: {estimate:.6f}\n")


def cmd_verify(args, out):
    if args.rank < 2:
        raise UsageError("--rank must be at least 2")
    if args.spec is None:
        targets = verify.standard_specs()
    else:
        targets = {args.spec: _spec(args)}
    failed = 0
    for label, f in targets.items():
        out.write(f"[{label}]\n")
        for res in verify.run_checks(f, rank=args.rank, seed=args.seed):
            status = "PASS" if res.ok else "FAIL"
            detail = f"  ({res.detail})" if res.detail else ""
            out.write(f"  {status}  {res.name}{detail}\n")
            failed += not res.ok
    out.write(f"{failed} failure(s)\n")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstar", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="JSON spec file (matrix and epsilon schedules)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="monotonicity regime of the eps schedule")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="evaluate f")
    p.add_argument("--x", help="rational 'p/q' or decimal in [0, 1]")
    p.add_argument("--seq", help="digit sequence such as '21(0)'")
    p.add_argument("--tol", type=float, help="evaluate in floating point to this tolerance")
    p.add_argument("--depth", type=int, default=4096, help="digit budget for exact expansion")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("encode", parents=[common], help="Q*_3 digits of x")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=20)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("increment", parents=[common], help="increment of f on a cylinder")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_increment)

    p = sub.add_parser("range", parents=[common], help="exact image of a cylinder")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("levelset", parents=[common], help="regions that may contain f(x) = y")
    p.add_argument("--y", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("graph", parents=[common], help="CSV of graph points at cylinder ends")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.add_argument("--digits", type=int, default=15, help="significant digits in decimal mode")
    p.add_argument("--exact", action="store_true", help="write rationals as p/q")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("ifs", parents=[common], help="the three affine maps of the graph")
    p.set_defaults(func=cmd_ifs)

    p = sub.add_parser("dimension", parents=[common], help="box-counting dimension estimate")
    p.add_argument("--scales", default="27,81,243", help="comma separated grid sizes")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--rank", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("depth", "rank"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"qstar: error: --{name} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"qstar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
