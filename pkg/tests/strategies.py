"""Shared hypothesis strategies over a small alphabet."""

from fractions import Fraction

from hypothesis import strategies as st

from ncanick.ncpoly import Alphabet, MonomialOrder, Polynomial

ALPHA = Alphabet(("x", "y", "z"))
ORDER = MonomialOrder(ALPHA, (0, 1, 2))

words = st.lists(st.integers(0, 2), max_size=4).map(tuple)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(st.tuples(words, coeffs), max_size=4).map(Polynomial)
nonzero_polys = polys.filter(bool)


def as_fraction(x) -> Fraction:
    return Fraction(x)
