"""The function family f built on a Q*_3 expansion of its argument.

f reads the digits of x and re-sums them against image-side widths
g0 = g2 = (1 + eps)/3, g1 = (1 - 2*eps)/3 with cut points
d0 = 0, d1 = g0, d2 = g0 + g1.  eps = 0 gives the identity on the
ternary matrix, eps = 1/2 gives the Cantor function and eps > 1/2 makes
g1 negative.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .repsys import (
    ColumnSchedule,
    DigitSeq,
    WordLike,
    as_fraction,
    as_word,
    dual_representation,
    encode,
    partial_sum,
    periodic_index,
    series_value,
)


@dataclass(frozen=True)
class GColumn:
    g0: Fraction
    g1: Fraction
    g2: Fraction
    d0: Fraction
    d1: Fraction
    d2: Fraction

    @classmethod
    def from_eps(cls, eps) -> "GColumn":
        eps = as_fraction(eps)
        g0 = (1 + eps) / 3
        g1 = (1 - 2 * eps) / 3
        return cls(g0, g1, g0, Fraction(0), g0, g0 + g1)

    @property
    def widths(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.g0, self.g1, self.g2)

    @property
    def cuts(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.d0, self.d1, self.d2)


@dataclass(frozen=True)
class EpsilonSchedule:
    """The sequence eps_k as a finite preamble followed by a repeating block."""

    preamble: tuple[Fraction, ...]
    period: tuple[Fraction, ...]
    _cols: tuple[tuple[GColumn, ...], tuple[GColumn, ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        pre = tuple(as_fraction(e) for e in self.preamble)
        per = tuple(as_fraction(e) for e in self.period)
        if not per:
            raise ValueError("epsilon period must be nonempty")
        for e in pre + per:
            if not 0 <= e <= 1:
                raise ValueError(f"epsilon out of [0,1]: {e}")
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)
        object.__setattr__(
            self,
            "_cols",
            (tuple(GColumn.from_eps(e) for e in pre), tuple(GColumn.from_eps(e) for e in per)),
        )

    @classmethod
    def constant(cls, eps) -> "EpsilonSchedule":
        return cls((), (eps,))

    @property
    def is_constant(self) -> bool:
        return not self.preamble and len(self.period) == 1

    def eps_at(self, k: int) -> Fraction:
        in_pre, i = periodic_index(k, len(self.preamble), len(self.period))
        return self.preamble[i] if in_pre else self.period[i]

    def values(self) -> tuple[Fraction, ...]:
        """Preamble then one period: enough to determine every eps_k."""
        return self.preamble + self.period

    def layer(self, k: int):
        col = g_column_at(self, k)
        return col.cuts, col.widths


def g_column_at(e: EpsilonSchedule, k: int) -> GColumn:
    in_pre, i = periodic_index(k, len(e.preamble), len(e.period))
    return e._cols[0][i] if in_pre else e._cols[1][i]


@dataclass(frozen=True)
class FunctionSpec:
    x_schedule: ColumnSchedule
    eps: EpsilonSchedule

    @classmethod
    def uniform(cls, eps, q=(Fraction(1, 3),) * 3) -> "FunctionSpec":
        """Constant matrix column ``q`` and constant ``eps``."""
        return cls(ColumnSchedule.uniform(*q), EpsilonSchedule.constant(eps))


def eval_exact(f: FunctionSpec, x: DigitSeq) -> Fraction:
    """f at the point with digits ``x``, exactly."""
    e = f.eps
    return series_value(x, e.layer, len(e.preamble), len(e.period))


def eval_at(f: FunctionSpec, x, depth: int = 4096) -> Fraction:
    """f at a rational point, via its exact digit expansion.

    Raises ValueError when the expansion of ``x`` is not found to be
    eventually periodic within ``depth`` digits.
    """
    enc = encode(f.x_schedule, x, depth)
    if not enc.exact:
        raise ValueError(f"no periodic expansion of {x} within {depth} digits")
    return eval_exact(f, enc.full)


def truncation_depth(tol: float) -> int:
    """Smallest m with (2/3)**m <= tol."""
    if tol >= 1:
        return 0
    m = math.ceil(math.log(tol) / math.log(2 / 3))
    while (2 / 3) ** m > tol:
        m += 1
    return m


def eval_approx(f: FunctionSpec, x: float, tol: float) -> float:
    """f(x) to within ``tol``, by truncating the series.

    The digits of ``x`` (taken as the exact binary value of the float) are
    extracted exactly; only the image-side sum is accumulated in floating
    point.  The dropped remainder is prod(g) * f(tail), bounded by (2/3)**m.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    m = truncation_depth(tol)
    if m == 0:
        return 0.0
    word = encode(f.x_schedule, Fraction(x), m).word
    total = 0.0
    scale = 1.0
    for k, d in enumerate(word, 1):
        col = g_column_at(f.eps, k)
        total += scale * float(col.cuts[d])
        scale *= float(col.widths[d])
    return total


def increment(f: FunctionSpec, w: WordLike) -> Fraction:
    """f(right end) - f(left end) of the cylinder ``w``: the product of g along ``w``."""
    mu = Fraction(1)
    for k, d in enumerate(as_word(w), 1):
        mu *= g_column_at(f.eps, k).widths[d]
    return mu


class Endpoint(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class CylinderRange(NamedTuple):
    lo: Fraction
    hi: Fraction
    argmin_at: Endpoint
    argmax_at: Endpoint


def range_on_cylinder(f: FunctionSpec, w: WordLike) -> CylinderRange:
    """Exact image of the cylinder ``w`` under f.

    On a cylinder f equals f(left) + mu * f(rescaled point), and f maps
    onto [0, 1], so the extremes sit at the two endpoints.
    """
    base, mu = partial_sum(as_word(w), f.eps.layer)
    if mu > 0:
        return CylinderRange(base, base + mu, Endpoint.LEFT, Endpoint.RIGHT)
    if mu < 0:
        return CylinderRange(base + mu, base, Endpoint.RIGHT, Endpoint.LEFT)
    return CylinderRange(base, base, Endpoint.LEFT, Endpoint.LEFT)


def dual_consistency(f: FunctionSpec, x: DigitSeq) -> Fraction:
    """Discrepancy f(other representation) - f(x); zero if f is well defined."""
    other = dual_representation(x)
    if other is None:
        raise ValueError(f"{x} has no dual representation")
    return eval_exact(f, other) - eval_exact(f, x)


def x_cylinder(f: FunctionSpec, w: WordLike) -> tuple[Fraction, Fraction]:
    """``(left, right)`` of the cylinder ``w`` on the argument side."""
    left, length = partial_sum(as_word(w), f.x_schedule.layer)
    return left, left + length

