"""Exact computation with Q*_3 digit expansions and the functions built on them.

The argument x in [0, 1] is expanded in digits {0, 1, 2} against a
stochastic matrix; f re-sums the same digits against widths controlled by
a sequence eps_k in [0, 1].  Depending on eps, f is strictly increasing, a
Cantor-type staircase or monotone on no interval at all.
"""
from .classify import (
    Regime,
    RegimeTag,
    classify_regime,
    derivative_ratios,
    plateau_cylinders,
    plateau_measure,
    subcylinder_signs,
)
from .fractal import (
    AffineMap2D,
    DegenerateMap,
    GraphSample,
    NonConstantSchedule,
    box_dimension,
    graph_sample,
    ifs_maps,
    self_affine_residual,
)
from .gfun import (
    CylinderRange,
    Endpoint,
    EpsilonSchedule,
    FunctionSpec,
    GColumn,
    dual_consistency,
    eval_approx,
    eval_at,
    eval_exact,
    g_column_at,
    increment,
    range_on_cylinder,
)
from .levelset import (
    SolutionRegion,
    Witness,
    invert_monotone,
    preimage_regions,
    root_count_lower_bound,
)
from .repsys import (
    ColumnSchedule,
    DigitSeq,
    Encoding,
    MatrixColumn,
    beta_of,
    canonicalize,
    column_at,
    cylinder_interval,
    dual_representation,
    encode,
    value_of,
)
from .specfile import SpecError, dump_spec, load_spec, parse_spec_file

__version__ = "0.1.0"
