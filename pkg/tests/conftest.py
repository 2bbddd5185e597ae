from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from bosonzqft.egf import EgfSeries

# exact bignum arithmetic has uneven run times
settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=7)


@st.composite
def series(draw, order=None, const=None, max_order=8):
    n = draw(st.integers(0, max_order)) if order is None else order
    coeffs = draw(st.lists(small_fractions, min_size=n + 1, max_size=n + 1))
    if const is not None:
        coeffs[0] = Fraction(const)
    return EgfSeries.of(coeffs)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
