from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from rctarski.field import ConstructibleNumber, sqrt_nonneg
from rctarski.geom import Point

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

small = st.fractions(min_value=-12, max_value=12, max_denominator=6)
positive = st.fractions(min_value=Fraction(1, 6), max_value=12, max_denominator=6)


@st.composite
def towers(draw, depth=2):
    """A small tower element: rationals plus up to ``depth`` square roots."""
    x = ConstructibleNumber(draw(small))
    for _ in range(draw(st.integers(0, depth))):
        r = sqrt_nonneg(draw(positive) + abs(x))
        x = x * ConstructibleNumber(draw(small)) + r
    return x


@st.composite
def points(draw):
    return Point(draw(small), draw(small))


@st.composite
def towered_points(draw):
    return Point(draw(towers(1)), draw(towers(1)))


@pytest.fixture
def p():
    return lambda x, y: Point(Fraction(x), Fraction(y))


# acceptance lines, printed after the run whatever the capture mode
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
