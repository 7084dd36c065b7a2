from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncanick.ncpoly import Polynomial
from ncanick.presentation import PresentationError, format_presentation, parse_presentation, parse_polynomial
from ncanick.unitary import build_presentation

from strategies import ALPHA, ORDER, polys

SQUARE = """\
# the dual numbers
generators x
relation x*x   # nilpotent
"""


def test_parse_square():
    pres = parse_presentation(SQUARE)
    assert pres.alphabet.labels == ("x",)
    assert pres.relations == (Polynomial.from_word((0, 0)),)
    assert pres.augmentation == (0,)


def test_parse_full():
    text = """generators a b
involution a b
order b a
relation 2*a*b - 1/2*b*a + 3/2
augment a=1 b=-3
"""
    with pytest.raises(PresentationError, match="does not kill"):
        parse_presentation(text)
    # eps(2ab - ba/2) = -6 + 3/2, so the constant 9/2 is killed
    pres = parse_presentation(text.replace("3/2", "9/2"))
    assert pres.order.base == (1, 0)
    assert pres.alphabet.involution == (1, 0)
    assert pres.augmentation == (1, -3)
    assert pres.relations[0].coeff((1, 0)) == Fraction(-1, 2)
    assert pres.relations[0].coeff(()) == Fraction(9, 2)


@pytest.mark.parametrize("text, where", [
    ("generators x\nrelation x*y\n", "line 2, column 12"),
    ("generators x\nrelation x**x\n", "line 2"),
    ("generators x\nfoo x\n", "line 2, column 1"),
    ("generators x\nrelation x x\n", "line 2"),
    ("generators x x\n", "line 1"),
    ("generators x\nrelation 1/0*x\n", "line 2"),
    ("generators x y\norder x\n", "line 2"),
    ("relation 1\n", "no generators"),
])
def test_parse_errors(text, where):
    with pytest.raises(PresentationError, match=where):
        parse_presentation(text)


@pytest.mark.parametrize("n", [2, 3])
def test_builtin_round_trip(n):
    pres = build_presentation(n)
    text = format_presentation(pres)
    back = parse_presentation(text)
    assert back.relations == pres.relations
    assert back.order == pres.order
    assert back.augmentation == pres.augmentation
    assert back.alphabet.involution == pres.alphabet.involution
    assert format_presentation(back) == text


@given(polys)
def test_polynomial_text_round_trip(p):
    assert parse_polynomial(p.format(ALPHA, ORDER), ALPHA) == p
