"""Invariant suite run by ``qstar verify``.

Every check is exact unless its name says otherwise.  A check returns a
:class:`CheckResult`; nothing here raises on a violated property.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .classify import (
    RegimeTag,
    classify_regime,
    plateau_cylinders,
    plateau_measure,
    subcylinder_signs,
)
from .fractal import (
    DegenerateMap,
    NonConstantSchedule,
    box_counts,
    graph_sample,
    ifs_maps,
    self_affine_residual,
)
from .gfun import (
    EpsilonSchedule,
    FunctionSpec,
    dual_consistency,
    eval_approx,
    eval_at,
    eval_exact,
    increment,
    range_on_cylinder,
)
from .levelset import preimage_regions
from .repsys import (
    ColumnSchedule,
    DigitSeq,
    MatrixColumn,
    canonicalize,
    cylinder_interval,
    dual_representation,
    encode,
    value_of,
)

F = Fraction


def standard_specs() -> dict[str, FunctionSpec]:
    """The four reference parameterizations used throughout the test suite."""
    nonuniform = FunctionSpec(
        ColumnSchedule((), (MatrixColumn(F(1, 2), F(1, 4), F(1, 4)), MatrixColumn(F(1, 5), F(2, 5), F(2, 5)))),
        EpsilonSchedule((), (F(1, 4), F(3, 4))),
    )
    return {
        "eps=0": FunctionSpec.uniform(0),
        "eps=1/2": FunctionSpec.uniform(F(1, 2)),
        "eps=1": FunctionSpec.uniform(1),
        "nonuniform": nonuniform,
    }


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def all_words(max_rank: int, min_rank: int = 0):
    for r in range(min_rank, max_rank + 1):
        yield from product((0, 1, 2), repeat=r)


def random_seq(rng: random.Random, max_prefix: int = 8, max_tail: int = 4) -> DigitSeq:
    prefix = tuple(rng.randrange(3) for _ in range(rng.randint(0, max_prefix)))
    tail = tuple(rng.randrange(3) for _ in range(rng.randint(1, max_tail)))
    return DigitSeq(prefix, tail)


def _first_failure(items, pred) -> str | None:
    for item in items:
        if not pred(item):
            return f"fails at {item}"
    return None


def _check(name: str, failure: str | None) -> CheckResult:
    return CheckResult(name, failure is None, failure or "")


# --- repsys ---------------------------------------------------------------


def check_partition(f: FunctionSpec, rank: int, rng) -> CheckResult:
    s = f.x_schedule

    def ok(w):
        left, length = cylinder_interval(s, w)
        kids = [cylinder_interval(s, w + (d,)) for d in (0, 1, 2)]
        return (
            sum(k[1] for k in kids) == length
            and kids[0][0] == left
            and all(left <= kl and kl + kw <= left + length for kl, kw in kids)
        )

    return _check("repsys: cylinder partition and nesting", _first_failure(all_words(rank - 1), ok))


def check_dual_equality(f: FunctionSpec, rank: int, rng) -> CheckResult:
    s = f.x_schedule
    seqs = [DigitSeq(w, (0,)) for w in all_words(rank, 1) if w[-1] != 0]
    return _check(
        "repsys: dual representations share their value",
        _first_failure(seqs, lambda x: value_of(s, x) == value_of(s, dual_representation(x))),
    )


def check_round_trip(f: FunctionSpec, rank: int, rng) -> CheckResult:
    s = f.x_schedule

    def ok(x):
        c = canonicalize(x)
        enc = encode(s, value_of(s, c), 512)
        return enc.exact and enc.full == c

    seqs = [random_seq(rng) for _ in range(50 * rank)]
    return _check("repsys: encode inverts value_of", _first_failure(seqs, ok))


def check_value_monotone(f: FunctionSpec, rank: int, rng) -> CheckResult:
    s = f.x_schedule
    xs = [value_of(s, DigitSeq(w, (0,))) for w in all_words(rank, rank)]
    bad = next((i for i in range(len(xs) - 1) if not xs[i] < xs[i + 1]), None)
    return _check("repsys: value_of increasing in word order", None if bad is None else f"index {bad}")


# --- gfun -----------------------------------------------------------------


def check_increment_identity(f: FunctionSpec, rank: int, rng) -> CheckResult:
    def ok(w):
        return eval_exact(f, DigitSeq(w, (2,))) - eval_exact(f, DigitSeq(w, (0,))) == increment(f, w)

    return _check("gfun: cylinder increment is the product of g", _first_failure(all_words(rank, 1), ok))


def check_endpoints(f: FunctionSpec, rank: int, rng) -> CheckResult:
    ok = eval_exact(f, DigitSeq((), (0,))) == 0 and eval_exact(f, DigitSeq((), (2,))) == 1
    return _check("gfun: f(0) = 0 and f(1) = 1", None if ok else "endpoint values wrong")


def check_well_defined(f: FunctionSpec, rank: int, rng) -> CheckResult:
    seqs = [DigitSeq(w, (0,)) for w in all_words(rank - 1, 1) if w[-1] != 0]
    return _check(
        "gfun: both representations give the same f",
        _first_failure(seqs, lambda x: dual_consistency(f, x) == 0),
    )


def check_range(f: FunctionSpec, rank: int, rng) -> CheckResult:
    seqs = [random_seq(rng) for _ in range(200 * rank)]
    return _check("gfun: values lie in [0, 1]", _first_failure(seqs, lambda x: 0 <= eval_exact(f, x) <= 1))


def check_continuity(f: FunctionSpec, rank: int, rng) -> CheckResult:
    def pair():
        m = rng.randint(1, 3 * rank)
        common = tuple(rng.randrange(3) for _ in range(m))
        a, b = random_seq(rng), random_seq(rng)
        return m, DigitSeq(common + a.prefix, a.tail), DigitSeq(common + b.prefix, b.tail)

    pairs = [pair() for _ in range(100 * rank)]
    return _check(
        "gfun: shared m-digit prefix bounds |f - f'| by (2/3)^m",
        _first_failure(pairs, lambda p: abs(eval_exact(f, p[1]) - eval_exact(f, p[2])) <= F(2, 3) ** p[0]),
    )


def check_extrema(f: FunctionSpec, rank: int, rng) -> CheckResult:
    def ok(w):
        r = range_on_cylinder(f, w)
        vals = [eval_exact(f, DigitSeq(w + u, (0,))) for u in all_words(2, 2)]
        vals.append(eval_exact(f, DigitSeq(w, (2,))))
        return min(vals) == r.lo and max(vals) == r.hi

    return _check("gfun: cylinder extremes at its endpoints", _first_failure(all_words(max(1, rank - 2)), ok))


def check_evaluators_agree(f: FunctionSpec, rank: int, rng) -> CheckResult:
    name = "gfun: float evaluator within tol of exact (approx)"
    # dyadic floats are exact rationals whose expansions turn periodic early
    xs = [rng.randrange(257) / 256 for _ in range(20 * rank)]
    compared = 0
    for x in xs:
        try:
            exact = eval_at(f, F(x), depth=2048)
        except ValueError:
            continue
        compared += 1
        if abs(eval_approx(f, x, 1e-12) - float(exact)) > 1e-12 + 1e-15:
            return CheckResult(name, False, f"fails at x={x}")
    return CheckResult(name, True, f"{compared} points compared")


# --- classify -------------------------------------------------------------


def check_regime(f: FunctionSpec, rank: int, rng) -> CheckResult:
    tag = classify_regime(f.eps).tag
    if tag is RegimeTag.NOWHERE_MONOTONE:
        def ok(w):
            signs = subcylinder_signs(f, w)
            return min(signs) < 0 < max(signs)

        return _check("classify: children carry both signs", _first_failure(all_words(rank - 1), ok))
    if tag is RegimeTag.STRICTLY_INCREASING:
        ys = [eval_exact(f, DigitSeq(w, (0,))) for w in all_words(rank, rank)] + [F(1)]
        bad = next((i for i in range(len(ys) - 1) if not ys[i] < ys[i + 1]), None)
        return _check("classify: strictly increasing on rank endpoints", None if bad is None else f"index {bad}")
    return CheckResult(f"classify: regime {tag.value} (no monotonicity claim)", True)


def check_zero_factor(f: FunctionSpec, rank: int, rng) -> CheckResult:
    def ok(w):
        zero = any(d == 1 and f.eps.eps_at(j) == F(1, 2) for j, d in enumerate(w, 1))
        return (increment(f, w) == 0) == zero

    return _check("classify: zero increment iff a digit-1 at eps = 1/2", _first_failure(all_words(rank, 1), ok))


def check_plateaus(f: FunctionSpec, rank: int, rng) -> CheckResult:
    words = plateau_cylinders(f, rank)
    if any(increment(f, w) != 0 for w in words):
        return CheckResult("classify: plateau cylinders", False, "nonzero increment on a plateau")
    direct = sum((cylinder_interval(f.x_schedule, w)[1] for w in words), F(0))
    measures = [plateau_measure(f, r) for r in range(1, rank + 1)]
    if direct != measures[-1]:
        return CheckResult("classify: plateau cylinders", False, f"measure {measures[-1]} != {direct}")
    if any(a > b for a, b in zip(measures, measures[1:])) or measures[-1] > 1:
        return CheckResult("classify: plateau cylinders", False, "measure not monotone in rank")
    return CheckResult("classify: plateau cylinders", True)


# --- levelset -------------------------------------------------------------


def check_levelset_refinement(f: FunctionSpec, rank: int, rng) -> CheckResult:
    name = "levelset: regions refine and contain y0 in their range"
    for y0 in (F(0), F(1, 3), F(1, 2), F(5, 7), F(1)):
        prev = None
        for depth in range(1, min(rank, 6) + 1):
            regions = preimage_regions(f, y0, depth)
            if not regions or any(not r.f_range[0] <= y0 <= r.f_range[1] for r in regions):
                return CheckResult(name, False, f"y0={y0} depth={depth}")
            if prev is not None:
                for r in regions:
                    if not any(p.x_interval[0] <= r.x_interval[0] and r.x_interval[1] <= p.x_interval[1] for p in prev):
                        return CheckResult(name, False, f"y0={y0}: {r.word} escapes depth {depth - 1}")
            prev = regions
    return CheckResult(name, True)


# --- fractal --------------------------------------------------------------


def check_self_affine(f: FunctionSpec, rank: int, rng) -> CheckResult:
    name = "fractal: graph equals union of its three affine images"
    try:
        ifs_maps(f)
    except (NonConstantSchedule, DegenerateMap) as exc:
        return CheckResult(f"{name} (skipped: {exc.__class__.__name__})", True)
    res = self_affine_residual(f, graph_sample(f, min(rank, 4)))
    return _check(name, None if res == 0 else f"residual {res}")


def check_box_coarsening(f: FunctionSpec, rank: int, rng) -> CheckResult:
    counts = [box_counts(f, n) for n in (9, 27, 81)]
    ok = all(a <= b for a, b in zip(counts, counts[1:]))
    return _check("fractal: box counts grow under refinement", None if ok else f"counts {counts}")


CHECKS: list[Callable[[FunctionSpec, int, random.Random], CheckResult]] = [
    check_partition,
    check_dual_equality,
    check_round_trip,
    check_value_monotone,
    check_increment_identity,
    check_endpoints,
    check_well_defined,
    check_range,
    check_continuity,
    check_extrema,
    check_evaluators_agree,
    check_regime,
    check_zero_factor,
    check_plateaus,
    check_levelset_refinement,
    check_self_affine,
    check_box_coarsening,
]


def run_checks(f: FunctionSpec, rank: int = 6, seed: int = 0) -> list[CheckResult]:
    if rank < 2:
        raise ValueError(f"rank must be at least 2, got {rank}")
    rng = random.Random(seed)
    return [check(f, rank, rng) for check in CHECKS]
