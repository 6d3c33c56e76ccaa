from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstar.gfun import (
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
    truncation_depth,
)
from qstar.repsys import ColumnSchedule, DigitSeq, MatrixColumn, canonicalize, encode, value_of

from conftest import digit_seqs, function_specs, words
from oracles import cantor, series_partial

IDENTITY = FunctionSpec.uniform(0)
CANTOR = FunctionSpec.uniform(F(1, 2))
FLIP = FunctionSpec.uniform(1)


def seq(text):
    return DigitSeq.parse(text)


class TestGColumns:
    def test_eps_zero(self):
        c = g_column_at(EpsilonSchedule.constant(0), 3)
        assert c.widths == (F(1, 3),) * 3
        assert c.cuts == (0, F(1, 3), F(2, 3))

    def test_eps_half(self):
        c = GColumn.from_eps(F(1, 2))
        assert c.widths == (F(1, 2), 0, F(1, 2))
        assert c.cuts == (0, F(1, 2), F(1, 2))

    def test_eps_one(self):
        c = GColumn.from_eps(1)
        assert c.widths == (F(2, 3), F(-1, 3), F(2, 3))
        assert c.cuts == (0, F(2, 3), F(1, 3))

    @given(st.fractions(0, 1, max_denominator=100))
    def test_invariants(self, eps):
        c = GColumn.from_eps(eps)
        assert sum(c.widths) == 1
        assert c.g0 == c.g2 and F(1, 3) <= c.g0 <= F(2, 3)
        assert F(-1, 3) <= c.g1 <= F(1, 3)
        assert c.d2 == c.g0 + c.g1

    def test_schedule_validation(self):
        with pytest.raises(ValueError):
            EpsilonSchedule((), (F(3, 2),))
        with pytest.raises(ValueError):
            EpsilonSchedule((0,), ())

    def test_schedule_positions(self):
        e = EpsilonSchedule((0, F(1, 2)), (1, F(1, 4)))
        assert [e.eps_at(k) for k in range(1, 7)] == [0, F(1, 2), 1, F(1, 4), 1, F(1, 4)]


class TestEvalExact:
    @given(function_specs)
    def test_endpoints(self, f):
        assert eval_exact(f, seq("(0)")) == 0
        assert eval_exact(f, seq("(2)")) == 1

    @given(digit_seqs)
    def test_identity_case(self, x):
        assert eval_exact(IDENTITY, x) == value_of(IDENTITY.x_schedule, x)

    @settings(max_examples=200)
    @given(function_specs, digit_seqs)
    def test_range(self, f, x):
        assert 0 <= eval_exact(f, x) <= 1

    @given(function_specs, digit_seqs)
    def test_matches_long_partial_sum(self, f, x):
        # independent term-by-term sum; the remainder after m terms is at most (2/3)^m
        m = 80
        total, _ = series_partial(x.head(m), f.eps.eps_at)
        assert abs(eval_exact(f, x) - total) <= F(2, 3) ** m

    def test_cantor_values(self):
        assert eval_exact(CANTOR, seq("(02)")) == F(1, 3)
        assert eval_exact(CANTOR, seq("1(0)")) == F(1, 2)
        assert eval_exact(CANTOR, seq("0(2)")) == F(1, 2)

    def test_flip_value_at_half(self):
        # x = (1): f = d1 / (1 - g1) = (2/3) / (4/3)
        assert eval_exact(FLIP, seq("(1)")) == F(1, 2)

    def test_eval_at_ternary_rationals_match_cantor(self):
        for k in range(0, 82):
            assert eval_at(CANTOR, F(k, 81)) == cantor(k, 4)

    def test_eval_at_nonperiodic_raises(self):
        f = FunctionSpec(ColumnSchedule.uniform(F(1, 5), F(2, 5), F(2, 5)), EpsilonSchedule.constant(0))
        with pytest.raises(ValueError):
            eval_at(f, F(1, 2), depth=64)


class TestEvalApprox:
    def test_zero(self):
        assert eval_approx(FLIP, 0.0, 1e-3) == 0.0

    def test_identity(self):
        assert eval_approx(IDENTITY, 0.7, 1e-12) == pytest.approx(0.7, abs=1e-12)

    def test_cantor_quarter(self):
        assert eval_approx(CANTOR, 0.25, 1e-12) == pytest.approx(1 / 3, abs=1e-12)

    def test_errors(self):
        with pytest.raises(ValueError):
            eval_approx(IDENTITY, 1.5, 1e-3)
        with pytest.raises(ValueError):
            eval_approx(IDENTITY, 0.5, 0.0)

    @pytest.mark.parametrize("tol", [1e-1, 1e-6, 1e-12])
    def test_truncation_depth(self, tol):
        m = truncation_depth(tol)
        assert (2 / 3) ** m <= tol < (2 / 3) ** (m - 1)

    @settings(max_examples=50)
    @given(function_specs, st.integers(0, 256))
    def test_within_tol_of_exact(self, f, k):
        x = k / 256
        try:
            exact = eval_at(f, F(x), depth=2048)
        except ValueError:
            return
        assert abs(eval_approx(f, x, 1e-10) - float(exact)) <= 1e-10 + 1e-15


class TestIncrement:
    def test_empty(self):
        assert increment(FLIP, "") == 1

    def test_plateau(self):
        f = FunctionSpec(ColumnSchedule.uniform(), EpsilonSchedule((F(1, 2),), (0,)))
        assert increment(f, "1") == 0

    def test_flip(self):
        assert increment(FLIP, "11") == F(1, 9)
        assert eval_exact(FLIP, seq("11(2)")) - eval_exact(FLIP, seq("11(0)")) == F(1, 9)

    @settings(max_examples=200)
    @given(function_specs, words)
    def test_endpoint_difference(self, f, w):
        mu = increment(f, w)
        assert eval_exact(f, DigitSeq(w, (2,))) - eval_exact(f, DigitSeq(w, (0,))) == mu

    @given(function_specs, words)
    def test_children_telescope(self, f, w):
        # right end of child d is the left end of child d+1
        ends = [range_on_cylinder(f, w + (d,)) for d in (0, 1, 2)]
        lefts = [eval_exact(f, DigitSeq(w + (d,), (0,))) for d in (0, 1, 2)]
        rights = [eval_exact(f, DigitSeq(w + (d,), (2,))) for d in (0, 1, 2)]
        assert rights[0] == lefts[1] and rights[1] == lefts[2]
        assert sum(increment(f, w + (d,)) for d in (0, 1, 2)) == increment(f, w)
        assert all(r.lo <= r.hi for r in ends)


class TestRange:
    def test_whole_interval(self):
        assert range_on_cylinder(FLIP, "") == (0, 1, Endpoint.LEFT, Endpoint.RIGHT)

    def test_flip_middle(self):
        assert range_on_cylinder(FLIP, "1") == (F(1, 3), F(2, 3), Endpoint.RIGHT, Endpoint.LEFT)

    def test_plateau_is_degenerate(self):
        f = FunctionSpec(ColumnSchedule.uniform(), EpsilonSchedule((F(1, 2),), (0,)))
        r = range_on_cylinder(f, "1")
        assert r.lo == r.hi == F(1, 2)
        assert r.argmin_at == r.argmax_at

    @given(function_specs, words, st.lists(st.integers(0, 2), max_size=3).map(tuple), st.integers(0, 2))
    def test_contains_descendants(self, f, w, u, t):
        r = range_on_cylinder(f, w)
        assert r.lo <= eval_exact(f, DigitSeq(w + u, (t,))) <= r.hi


class TestDualConsistency:
    @pytest.mark.parametrize("text", ["1(0)", "2(0)"])
    @given(f=function_specs)
    def test_first_digit(self, f, text):
        assert dual_consistency(f, seq(text)) == 0

    def test_eps_three_quarters(self):
        assert dual_consistency(FunctionSpec.uniform(F(3, 4)), seq("21(0)")) == 0

    @given(function_specs, words.filter(lambda w: w and w[-1] != 0))
    def test_all_cut_points(self, f, w):
        assert dual_consistency(f, DigitSeq(w, (0,))) == 0

    def test_requires_dual(self):
        with pytest.raises(ValueError):
            dual_consistency(FLIP, seq("(1)"))


@settings(max_examples=200)
@given(function_specs, st.integers(1, 12), digit_seqs, digit_seqs)
def test_continuity_modulus(f, m, a, b):
    common = a.head(m)
    x, y = DigitSeq(common + b.prefix, b.tail), DigitSeq(common, a.tail)
    assert abs(eval_exact(f, x) - eval_exact(f, y)) <= F(2, 3) ** m


@given(function_specs, digit_seqs)
def test_value_independent_of_written_form(f, x):
    assert eval_exact(f, canonicalize(x)) == eval_exact(f, x)


def test_encode_then_eval_matches_series_for_decimal():
    enc = encode(IDENTITY.x_schedule, F(7, 10), 64)
    assert enc.exact
    assert eval_exact(IDENTITY, enc.full) == F(7, 10)
