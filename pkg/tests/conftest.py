from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qstar import ColumnSchedule, DigitSeq, EpsilonSchedule, FunctionSpec, MatrixColumn
from qstar.verify import standard_specs

F = Fraction

digit = st.integers(0, 2)
words = st.lists(digit, max_size=8).map(tuple)
digit_seqs = st.builds(DigitSeq, words, st.lists(digit, min_size=1, max_size=4).map(tuple))


@st.composite
def columns(draw):
    a, b, c = (draw(st.integers(1, 9)) for _ in range(3))
    n = a + b + c
    return MatrixColumn(F(a, n), F(b, n), F(c, n))


column_schedules = st.builds(
    ColumnSchedule,
    st.lists(columns(), max_size=2).map(tuple),
    st.lists(columns(), min_size=1, max_size=3).map(tuple),
)
eps_values = st.integers(0, 12).map(lambda k: F(k, 12))
eps_schedules = st.builds(
    EpsilonSchedule,
    st.lists(eps_values, max_size=2).map(tuple),
    st.lists(eps_values, min_size=1, max_size=3).map(tuple),
)
function_specs = st.builds(FunctionSpec, column_schedules, eps_schedules)


STANDARD = standard_specs()


@pytest.fixture(params=list(STANDARD), ids=list(STANDARD))
def std_spec(request):
    return STANDARD[request.param]


# acceptance report: criterion number -> (title, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC-{n:02d}  {title}")
