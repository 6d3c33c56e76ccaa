"""Monotonicity regimes, plateaus and singularity probes.

The sign of g1 = (1 - 2*eps)/3 at each position decides the local
behaviour: positive everywhere gives a strictly increasing f, zero
everywhere gives a Cantor-type staircase, negative everywhere makes f
monotone on no interval.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .gfun import FunctionSpec, EpsilonSchedule, g_column_at, increment
from .repsys import Word, WordLike, as_word, column_at

HALF = Fraction(1, 2)

# Digits kept by the Cantor-type carrier; digit 1 marks the gaps.
CANTOR_DIGITS = (0, 2)


class RegimeTag(enum.Enum):
    STRICTLY_INCREASING = "StrictlyIncreasing"
    CANTOR_SINGULAR = "CantorSingular"
    NOWHERE_MONOTONE = "NowhereMonotone"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Regime:
    """Regime tag plus the sign of g1 at each preamble, then period, position."""

    tag: RegimeTag
    per_index: tuple[int, ...]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def classify_regime(e: EpsilonSchedule) -> Regime:
    # preamble plus one period covers every position
    signs = tuple(_sign(1 - 2 * eps) for eps in e.values())
    if all(s > 0 for s in signs):
        tag = RegimeTag.STRICTLY_INCREASING
    elif all(s == 0 for s in signs):
        tag = RegimeTag.CANTOR_SINGULAR
    elif all(s < 0 for s in signs):
        tag = RegimeTag.NOWHERE_MONOTONE
    else:
        tag = RegimeTag.MIXED
    return Regime(tag, signs)


def subcylinder_signs(f: FunctionSpec, w: WordLike) -> tuple[int, int, int]:
    """Signs (-1, 0, +1) of the increments on the three children of ``w``."""
    w = as_word(w)
    mu = increment(f, w)
    g = g_column_at(f.eps, len(w) + 1)
    return tuple(_sign(mu * gd) for gd in g.widths)


def _is_zero_digit(f: FunctionSpec, k: int, d: int) -> bool:
    return d == 1 and f.eps.eps_at(k) == HALF


def plateau_cylinders(f: FunctionSpec, max_rank: int) -> list[Word]:
    """Maximal cylinders of rank <= ``max_rank`` on which f is constant.

    These are the words whose last digit is a zero factor (digit 1 at a
    position with eps = 1/2) and with no earlier zero factor.  In the
    uniform eps = 1/2 case they are exactly ``v + (1,)`` with ``v`` over
    {0, 2}.  Output is sorted lexicographically.
    """
    if max_rank < 1:
        raise ValueError(f"max_rank must be positive, got {max_rank}")
    found: list[Word] = []
    # frontier holds words with no zero factor so far
    frontier: list[Word] = [()]
    for k in range(1, max_rank + 1):
        nxt = []
        for v in frontier:
            for d in (0, 1, 2):
                if _is_zero_digit(f, k, d):
                    found.append(v + (d,))
                else:
                    nxt.append(v + (d,))
        frontier = nxt
        if not any(f.eps.eps_at(j) == HALF for j in range(k + 1, max_rank + 1)):
            break
    return sorted(found)


def plateau_measure(f: FunctionSpec, max_rank: int) -> Fraction:
    """Total argument-side length of the plateau cylinders up to ``max_rank``.

    Equals the sum of cylinder lengths over :func:`plateau_cylinders`, but
    carries only the total length of the not-yet-constant frontier, so the
    cost is linear in ``max_rank``.
    """
    if max_rank < 1:
        raise ValueError(f"max_rank must be positive, got {max_rank}")
    total = Fraction(0)
    alive = Fraction(1)
    for k in range(1, max_rank + 1):
        if f.eps.eps_at(k) == HALF:
            q = column_at(f.x_schedule, k)
            total += alive * q.q1
            alive *= q.q0 + q.q2
    return total


def derivative_ratios(f: FunctionSpec, x, m: int) -> list[Fraction]:
    """Increment-to-length ratios on the rank-1..m cylinders containing ``x``.

    ``x`` is a DigitSeq or a digit word of length >= m.  A ratio sequence
    tending to 0 is evidence of a zero derivative along cylinders; one that
    blows up in absolute value is evidence of unbounded difference quotients.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    digits = x.head(m) if hasattr(x, "head") else as_word(x)[:m]
    if len(digits) < m:
        raise ValueError(f"need {m} digits, got {len(digits)}")
    out = []
    r = Fraction(1)
    for k, d in enumerate(digits, 1):
        r *= g_column_at(f.eps, k).widths[d] / column_at(f.x_schedule, k).widths[d]
        out.append(r)
    return out
