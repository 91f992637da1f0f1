from fractions import Fraction

import mpmath
import pytest
from hypothesis import strategies as st

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)
positive_fractions = st.fractions(min_value=Fraction(1, 1000), max_value=50, max_denominator=1000)


@st.composite
def nonzero_polys(draw, max_degree=4, *, nonzero_constant=False):
    """Short rational coefficient lists that are not identically zero."""
    coeffs = draw(st.lists(small_fractions, min_size=1, max_size=max_degree + 1))
    if nonzero_constant and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    if all(c == 0 for c in coeffs):
        coeffs[0] = Fraction(1)
    return coeffs


@pytest.fixture(autouse=True)
def mp_precision():
    """mpmath oracles run at 60 significant digits regardless of test order."""
    with mpmath.workdps(60):
        yield
