"""Q*_3 digit representation of [0, 1].

A point is addressed by digits over {0, 1, 2}; the k-th digit splits the
current interval in the proportions (q0, q1, q2) of column k of an infinite
positive stochastic matrix.  The matrix is stored as a finite preamble
followed by a block that repeats forever, which keeps every quantity
exactly computable with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, NamedTuple, Sequence, Union

Rational = Fraction
Word = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

DIGITS = (0, 1, 2)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction.

    Floats are rejected: a float silently smuggles binary rounding into
    the exact path.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def as_word(w: WordLike) -> Word:
    """Normalize ``"021"`` or ``[0, 2, 1]`` to a digit tuple."""
    if isinstance(w, str):
        try:
            digits = tuple(int(ch) for ch in w)
        except ValueError:
            raise ValueError(f"not a digit word: {w!r}") from None
    else:
        digits = tuple(int(d) for d in w)
    for d in digits:
        if d not in DIGITS:
            raise ValueError(f"digit {d} not in {{0, 1, 2}}")
    return digits


def word_str(w: Iterable[int]) -> str:
    return "".join(str(d) for d in w)


def periodic_index(k: int, n_preamble: int, n_period: int) -> tuple[bool, int]:
    """Locate position ``k`` (1-based) as ``(in_preamble, index)``."""
    if k < 1:
        raise ValueError(f"position must be >= 1, got {k}")
    if k <= n_preamble:
        return True, k - 1
    return False, (k - n_preamble - 1) % n_period


@dataclass(frozen=True)
class MatrixColumn:
    """One column (q0, q1, q2) of the stochastic matrix."""

    q0: Fraction
    q1: Fraction
    q2: Fraction

    def __post_init__(self):
        qs = tuple(as_fraction(q) for q in (self.q0, self.q1, self.q2))
        object.__setattr__(self, "q0", qs[0])
        object.__setattr__(self, "q1", qs[1])
        object.__setattr__(self, "q2", qs[2])
        if min(qs) <= 0:
            raise ValueError(f"column entries must be positive: {qs}")
        if sum(qs) != 1:
            raise ValueError(f"column does not sum to 1: {qs}")
        object.__setattr__(self, "widths", qs)
        object.__setattr__(self, "cuts", (Fraction(0), qs[0], qs[0] + qs[1]))

    widths: tuple[Fraction, Fraction, Fraction] = field(init=False, repr=False, compare=False)
    cuts: tuple[Fraction, Fraction, Fraction] = field(init=False, repr=False, compare=False)


def beta_of(c: MatrixColumn, d: int) -> Fraction:
    """Left cut point of digit ``d`` in column ``c``: 0, q0 or q0 + q1."""
    if d not in DIGITS:
        raise ValueError(f"invalid digit {d!r}")
    return c.cuts[d]


@dataclass(frozen=True)
class ColumnSchedule:
    """Infinite matrix as ``preamble`` columns followed by ``period`` repeated."""

    preamble: tuple[MatrixColumn, ...]
    period: tuple[MatrixColumn, ...]

    def __post_init__(self):
        object.__setattr__(self, "preamble", tuple(self.preamble))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must contain at least one column")

    @classmethod
    def uniform(cls, q0=Fraction(1, 3), q1=Fraction(1, 3), q2=Fraction(1, 3)) -> "ColumnSchedule":
        return cls((), (MatrixColumn(q0, q1, q2),))

    @property
    def is_constant(self) -> bool:
        return not self.preamble and len(self.period) == 1

    def column(self, k: int) -> MatrixColumn:
        return column_at(self, k)

    def layer(self, k: int):
        col = column_at(self, k)
        return col.cuts, col.widths

    def columns(self) -> tuple[MatrixColumn, ...]:
        return self.preamble + self.period


def column_at(s: ColumnSchedule, k: int) -> MatrixColumn:
    in_pre, i = periodic_index(k, len(s.preamble), len(s.period))
    return s.preamble[i] if in_pre else s.period[i]


@dataclass(frozen=True)
class DigitSeq:
    """Eventually periodic digit sequence ``prefix`` followed by ``tail`` forever.

    Written ``"21(0)"``.  Construction does not canonicalize; see
    :func:`canonicalize`.
    """

    prefix: Word
    tail: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", as_word(self.prefix))
        object.__setattr__(self, "tail", as_word(self.tail))
        if not self.tail:
            raise ValueError("tail must be nonempty")

    @classmethod
    def parse(cls, text: str) -> "DigitSeq":
        text = text.strip()
        if not (text.endswith(")") and "(" in text):
            raise ValueError(f"expected 'prefix(tail)', got {text!r}")
        head, _, rest = text.partition("(")
        return cls(as_word(head), as_word(rest[:-1]))

    @classmethod
    def finite(cls, w: WordLike, fill: int = 0) -> "DigitSeq":
        return cls(as_word(w), (fill,))

    def digit(self, k: int) -> int:
        """The k-th digit, 1-based."""
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.tail[(k - len(self.prefix) - 1) % len(self.tail)]

    def head(self, n: int) -> Word:
        return tuple(self.digit(k) for k in range(1, n + 1))

    def __str__(self) -> str:
        return f"{word_str(self.prefix)}({word_str(self.tail)})"


Layer = Callable[[int], tuple[Sequence[Fraction], Sequence[Fraction]]]


def partial_sum(word: Word, layer: Layer, start: int = 1) -> tuple[Fraction, Fraction]:
    """Sum and running product of the series over a finite word.

    Returns ``(sum_k cut_k * prod_{j<k} width_j, prod_j width_j)``.
    """
    total = Fraction(0)
    scale = Fraction(1)
    for k, d in enumerate(word, start):
        cuts, widths = layer(k)
        total += scale * cuts[d]
        scale *= widths[d]
    return total, scale


def series_value(x: DigitSeq, layer: Layer, n_preamble: int, n_period: int) -> Fraction:
    """Exact value of ``sum_k cut(a_k, k) * prod_{j<k} width(a_j, j)``.

    The schedule behind ``layer`` must be periodic beyond ``n_preamble``
    with period ``n_period``.  Once both the digit tail and the schedule
    are periodic, one hyper-period contributes ``c`` and scales by ``r``
    so the remainder ``T`` obeys ``T = c + r*T``.
    """
    total, scale = partial_sum(x.prefix, layer)
    k = len(x.prefix) + 1
    tail = x.tail
    phase = 0
    while k <= n_preamble and scale != 0:
        cuts, widths = layer(k)
        d = tail[phase]
        total += scale * cuts[d]
        scale *= widths[d]
        phase = (phase + 1) % len(tail)
        k += 1
    if scale == 0:
        return total
    hyper = math.lcm(len(tail), n_period)
    rotated = tuple(tail[(phase + i) % len(tail)] for i in range(hyper))
    c, r = partial_sum(rotated, layer, start=k)
    if r == 1:
        raise ArithmeticError("tail ratio equals 1; series does not converge")
    return total + scale * c / (1 - r)


def value_of(s: ColumnSchedule, x: DigitSeq) -> Fraction:
    """Point of [0, 1] with Q*_3 digits ``x``."""
    return series_value(x, s.layer, len(s.preamble), len(s.period))


def cylinder_interval(s: ColumnSchedule, w: WordLike) -> tuple[Fraction, Fraction]:
    """``(left, length)`` of the closed cylinder addressed by ``w``."""
    return partial_sum(as_word(w), s.layer)


class Encoding(NamedTuple):
    word: Word
    exact: bool
    full: DigitSeq | None


def encode(s: ColumnSchedule, x, depth: int) -> Encoding:
    """Greedy digit expansion of the rational ``x`` to ``depth`` digits.

    Ties at cut points go to the higher digit, so rationals of cut type come
    out in their tail-(0) form.  Once the schedule is periodic, the pair
    (local remainder, schedule phase) determines every later digit; the
    first repeat of that pair within ``depth`` steps yields ``full``.
    """
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    n_pre, n_per = len(s.preamble), len(s.period)
    u = x
    digits: list[int] = []
    seen: dict[tuple[Fraction, int], int] = {}
    full = None
    for k in range(1, depth + 1):
        if k > n_pre:
            state = (u, (k - n_pre - 1) % n_per)
            if state in seen:
                start = seen[state]
                full = DigitSeq(tuple(digits[:start]), tuple(digits[start:]))
                break
            seen[state] = len(digits)
        col = column_at(s, k)
        cuts = col.cuts
        d = 2 if u >= cuts[2] else 1 if u >= cuts[1] else 0
        digits.append(d)
        u = (u - cuts[d]) / col.widths[d]
    else:
        # depth exhausted; a repeat may still sit exactly at the boundary
        k = depth + 1
        if k > n_pre:
            state = (u, (k - n_pre - 1) % n_per)
            if state in seen:
                start = seen[state]
                full = DigitSeq(tuple(digits[:start]), tuple(digits[start:]))
    if full is None:
        return Encoding(tuple(digits), False, None)
    word = full.head(depth)
    return Encoding(word, True, canonicalize(full))


def _minimal(x: DigitSeq) -> DigitSeq:
    """Shortest prefix and primitive tail describing the same sequence."""
    tail = x.tail
    n = len(tail)
    for p in range(1, n + 1):
        if n % p == 0 and tail == tail[:p] * (n // p):
            tail = tail[:p]
            break
    prefix = list(x.prefix)
    while prefix and prefix[-1] == tail[-1]:
        prefix.pop()
        tail = (tail[-1],) + tail[:-1]
    return DigitSeq(tuple(prefix), tail)


def canonicalize(x: DigitSeq) -> DigitSeq:
    """Minimal form, with ``...a(2)`` rewritten to ``...(a+1)(0)``.

    The point 1 keeps ``(2)``, its only representation.
    """
    m = _minimal(x)
    if m.tail != (2,) or not m.prefix:
        return m
    a = m.prefix[-1]
    # _minimal guarantees a != 2
    return DigitSeq(m.prefix[:-1] + (a + 1,), (0,))


def dual_representation(x: DigitSeq) -> DigitSeq | None:
    """The other digit sequence of a cut-type point, if there is one."""
    m = _minimal(x)
    if not m.prefix or m.tail not in ((0,), (2,)):
        return None
    a = m.prefix[-1]
    if m.tail == (0,):
        return DigitSeq(m.prefix[:-1] + (a - 1,), (2,))
    return DigitSeq(m.prefix[:-1] + (a + 1,), (0,))


def words(rank: int) -> Iterable[Word]:
    """All digit words of length ``rank`` in lexicographic order."""
    return product(DIGITS, repeat=rank)
