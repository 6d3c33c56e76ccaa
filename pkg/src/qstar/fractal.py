"""Self-affine structure of the graph of f and box-counting estimates.

With a constant matrix column (q0, q1, q2) and constant eps, the part of
the graph over the first-rank cylinder i is the image of the whole graph
under (x, y) -> (q_i x + beta_i, g_i y + delta_i).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gfun import FunctionSpec, eval_at, g_column_at
from .repsys import column_at

DEFAULT_POINT_BUDGET = 3**12 + 1


class NonConstantSchedule(ValueError):
    """The matrix or the eps sequence varies with the digit position."""


class DegenerateMap(ValueError):
    """Some image-side width g_i is zero, so the graph map collapses."""


@dataclass(frozen=True)
class AffineMap2D:
    """(x, y) -> (qx*x + bx, gy*y + dy)."""

    qx: Fraction
    bx: Fraction
    gy: Fraction
    dy: Fraction

    def __post_init__(self):
        if not 0 < self.qx < 1:
            raise ValueError(f"x contraction {self.qx} not in (0, 1)")
        if self.gy == 0:
            raise DegenerateMap("y contraction is zero")
        if not abs(self.gy) < 1:
            raise ValueError(f"|y contraction| = {abs(self.gy)} not below 1")

    def __call__(self, x, y):
        return self.qx * x + self.bx, self.gy * y + self.dy


def ifs_maps(f: FunctionSpec) -> tuple[AffineMap2D, AffineMap2D, AffineMap2D]:
    if not (f.x_schedule.is_constant and f.eps.is_constant):
        raise NonConstantSchedule("graph maps need a constant matrix and a constant eps")
    q = f.x_schedule.period[0]
    g = g_column_at(f.eps, 1)
    if 0 in g.widths:
        raise DegenerateMap(f"g = {g.widths} has a zero entry (eps = 1/2)")
    return tuple(AffineMap2D(q.widths[i], q.cuts[i], g.widths[i], g.cuts[i]) for i in range(3))


@dataclass(frozen=True)
class GraphSample:
    """Points (x, f(x)) sorted by x.  ``exact`` points hold Fractions."""

    points: tuple[tuple, ...]
    exact: bool = True

    def __len__(self):
        return len(self.points)

    def as_float(self) -> "GraphSample":
        return GraphSample(tuple((float(x), float(y)) for x, y in self.points), exact=False)

    def to_array(self) -> np.ndarray:
        return np.array([(float(x), float(y)) for x, y in self.points])


def _cylinder_nodes(f: FunctionSpec, rank: int):
    """(x_left, x_len, f_left, mu) for every word of ``rank``, in x order."""
    nodes = [(Fraction(0), Fraction(1), Fraction(0), Fraction(1))]
    for k in range(1, rank + 1):
        q = column_at(f.x_schedule, k)
        g = g_column_at(f.eps, k)
        nodes = [
            (xl + xw * q.cuts[d], xw * q.widths[d], fl + mu * g.cuts[d], mu * g.widths[d])
            for xl, xw, fl, mu in nodes
            for d in (0, 1, 2)
        ]
    return nodes


def graph_sample(f: FunctionSpec, rank: int, max_points: int = DEFAULT_POINT_BUDGET) -> GraphSample:
    """Exact graph points at the left ends of all rank-``rank`` cylinders, plus (1, 1)."""
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    if 3**rank + 1 > max_points:
        raise ValueError(f"rank {rank} needs {3**rank + 1} points, budget is {max_points}")
    pts = [(xl, fl) for xl, _, fl, _ in _cylinder_nodes(f, rank)]
    pts.append((Fraction(1), Fraction(1)))
    return GraphSample(tuple(pts), exact=True)


def self_affine_residual(f: FunctionSpec, sample: GraphSample) -> Fraction:
    """Largest |f(phi_i(x)) - (phi_i y)| over the sample and the three maps.

    f on the mapped abscissa is recomputed from scratch through its exact
    digit expansion.
    """
    maps = ifs_maps(f)
    if not sample.exact:
        raise ValueError("self-affinity residual needs an exact sample")
    worst = Fraction(0)
    for x, y in sample.points:
        for phi in maps:
            xi, yi = phi(x, y)
            worst = max(worst, abs(eval_at(f, xi) - yi))
    return worst


def _cells(lo: Fraction, hi: Fraction, n: int) -> tuple[int, int]:
    """Grid indices touched by the closed interval [lo, hi] on [0, 1] cut in n."""
    a = min(math.floor(lo * n), n - 1)
    b = min(max(a, math.ceil(hi * n) - 1), n - 1)
    return a, b


def box_counts(f: FunctionSpec, n: int, extra_rank: int = 6) -> int:
    """Occupied cells of the n-by-n grid over the unit square.

    Each cylinder's exact image is an interval and f is continuous, so a
    cylinder lying in one grid column touches every row its image meets.
    Cylinders straddling column boundaries are split further, up to
    ``extra_rank`` extra levels.
    """
    if n < 2:
        raise ValueError(f"grid size must be >= 2, got {n}")
    q_max = max(max(c.widths) for c in f.x_schedule.columns())
    rank = max(1, math.ceil(math.log(n) / math.log(1 / q_max)))
    grid = np.zeros((n, n), dtype=bool)
    stack = [(node, rank) for node in _cylinder_nodes(f, rank)]
    while stack:
        (xl, xw, fl, mu), k = stack.pop()
        c0, c1 = _cells(xl, xl + xw, n)
        if c1 > c0 and k < rank + extra_rank:
            q = column_at(f.x_schedule, k + 1)
            g = g_column_at(f.eps, k + 1)
            for d in (0, 1, 2):
                child = (xl + xw * q.cuts[d], xw * q.widths[d], fl + mu * g.cuts[d], mu * g.widths[d])
                stack.append((child, k + 1))
            continue
        r0, r1 = _cells(min(fl, fl + mu), max(fl, fl + mu), n)
        grid[r0 : r1 + 1, c0 : c1 + 1] = True
    return int(grid.sum())


def box_dimension(f: FunctionSpec, scales) -> tuple[float, list[tuple[int, int]]]:
    """Least-squares slope of log(count) against log(n) over the grid sizes."""
    scales = [int(n) for n in scales]
    if not scales or any(n < 2 for n in scales):
        raise ValueError(f"scales must be nonempty grid sizes >= 2, got {scales}")
    counts = [(n, box_counts(f, n)) for n in scales]
    if len(set(scales)) < 2:
        return math.nan, counts
    logn = np.log([n for n, _ in counts])
    logc = np.log([c for _, c in counts])
    slope = np.polyfit(logn, logc, 1)[0]
    return float(slope), counts
