"""Level sets f^{-1}(y0) by exact branch and bound over the cylinder tree."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .classify import RegimeTag, classify_regime
from .gfun import FunctionSpec, g_column_at
from .repsys import Word, as_fraction, column_at


class Witness(enum.Enum):
    SIGN_CHANGE = "SignChange"
    ENDPOINT_HIT = "EndpointHit"
    RANGE_ONLY = "RangeOnly"


@dataclass(frozen=True)
class SolutionRegion:
    """A cylinder whose exact image contains y0.

    ``f_ends`` holds f at the left and right ends of ``x_interval``.
    """

    word: Word
    x_interval: tuple[Fraction, Fraction]
    f_range: tuple[Fraction, Fraction]
    f_ends: tuple[Fraction, Fraction]
    witness: Witness

    @property
    def is_plateau(self) -> bool:
        return self.f_range[0] == self.f_range[1]


@dataclass(frozen=True)
class _Node:
    word: Word
    x_left: Fraction
    x_len: Fraction
    f_left: Fraction
    mu: Fraction

    def f_range(self) -> tuple[Fraction, Fraction]:
        a, b = self.f_left, self.f_left + self.mu
        return (a, b) if a <= b else (b, a)

    def child(self, k: int, d: int, f: FunctionSpec) -> "_Node":
        q = column_at(f.x_schedule, k)
        g = g_column_at(f.eps, k)
        return _Node(
            self.word + (d,),
            self.x_left + self.x_len * q.cuts[d],
            self.x_len * q.widths[d],
            self.f_left + self.mu * g.cuts[d],
            self.mu * g.widths[d],
        )


def _region(node: _Node, y0: Fraction) -> SolutionRegion:
    a, b = node.f_left, node.f_left + node.mu
    if (a - y0) * (b - y0) < 0:
        witness = Witness.SIGN_CHANGE
    elif a == y0 or b == y0:
        witness = Witness.ENDPOINT_HIT
    else:
        witness = Witness.RANGE_ONLY
    return SolutionRegion(
        node.word,
        (node.x_left, node.x_left + node.x_len),
        node.f_range(),
        (a, b),
        witness,
    )


def preimage_regions(f: FunctionSpec, y0, depth: int) -> list[SolutionRegion]:
    """Cylinders of rank ``depth`` (or shallower plateaus) that may meet f = y0.

    Children whose exact image misses y0 are pruned, so every solution lies
    in the union of the returned regions.  A plateau at level y0 is returned
    whole.  Regions are sorted by their left end.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    y0 = as_fraction(y0)
    if not 0 <= y0 <= 1:
        return []
    done: list[_Node] = []
    frontier = [_Node((), Fraction(0), Fraction(1), Fraction(0), Fraction(1))]
    for k in range(1, depth + 1):
        nxt = []
        for node in frontier:
            for d in (0, 1, 2):
                c = node.child(k, d, f)
                lo, hi = c.f_range()
                if not lo <= y0 <= hi:
                    continue
                if c.mu == 0:
                    done.append(c)
                else:
                    nxt.append(c)
        frontier = nxt
    regions = [_region(n, y0) for n in done + frontier]
    regions.sort(key=lambda r: (r.x_interval[0], r.x_interval[1]))
    return regions


def invert_monotone(f: FunctionSpec, y0, depth: int) -> Word:
    """Rank-``depth`` word whose image contains y0, for strictly increasing f.

    When y0 is the shared value at a cut point the higher digit wins, the
    same convention as :func:`qstar.repsys.encode`.
    """
    if classify_regime(f.eps).tag is not RegimeTag.STRICTLY_INCREASING:
        raise ValueError("invert_monotone requires every eps_k < 1/2")
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    y0 = as_fraction(y0)
    if not 0 <= y0 <= 1:
        raise ValueError(f"y0 = {y0} outside [0, 1]")
    node = _Node((), Fraction(0), Fraction(1), Fraction(0), Fraction(1))
    for k in range(1, depth + 1):
        for d in (2, 1, 0):
            c = node.child(k, d, f)
            if c.f_left <= y0 <= c.f_left + c.mu:
                node = c
                break
        else:  # pragma: no cover - children tile the parent's image
            raise AssertionError(f"lost y0 at rank {k}")
    return node.word


def root_count_lower_bound(f: FunctionSpec, y0, depth: int) -> int:
    """Certified lower bound on the number of solutions of f(x) = y0.

    Counts sign-change regions (each holds an interior root by continuity)
    plus distinct cylinder endpoints where f hits y0 exactly.
    """
    regions = preimage_regions(f, y0, depth)
    y0 = as_fraction(y0)
    crossings = sum(r.witness is Witness.SIGN_CHANGE for r in regions)
    hits = set()
    for r in regions:
        for x, fx in zip(r.x_interval, r.f_ends):
            if fx == y0:
                hits.add(x)
    return crossings + len(hits)
