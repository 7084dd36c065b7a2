from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncanick.ncpoly import (
    Alphabet, InvalidInput, MonomialOrder, Polynomial, compare_words, extend_multiplicatively,
    poly_mul, tip,
)
from ncanick.unitary import build_presentation, closed_groebner, Family, gamma, beta, un_order

from strategies import ALPHA, ORDER, nonzero_polys, polys, words

X = Alphabet(("x",))
OX = MonomialOrder(X, (0,))


def w(*labels, alphabet):
    return tuple(alphabet.index(s) for s in labels)


def test_compare_basics():
    assert compare_words(ORDER, (), ()) == 0
    assert compare_words(ORDER, (), (2,)) == -1
    assert compare_words(ORDER, (2, 2), (0, 0, 0)) == -1
    assert compare_words(ORDER, (0, 2), (1, 0)) == -1


def test_compare_un2_blacks_descending():
    o = un_order(2)
    a = o.alphabet
    assert compare_words(o, w("b2_2", alphabet=a), w("b2_1", alphabet=a)) == -1
    assert compare_words(o, w("b1_1", alphabet=a), w("w1_1", alphabet=a)) == -1
    assert compare_words(o, w("w1_1", alphabet=a), w("w1_2", alphabet=a)) == -1


def test_alphabet_mismatch():
    with pytest.raises(InvalidInput):
        compare_words(ORDER, (0,), (7,))


def test_involution_must_be_self_inverse():
    with pytest.raises(InvalidInput):
        Alphabet(("a", "b", "c"), (1, 2, 0))


def test_rational_canonical():
    p = Polynomial([((0,), Fraction(2, 4)), ((0,), Fraction(1, 2)), ((1,), 0)])
    assert p.terms == {(0,): Fraction(1)}
    assert Polynomial([((0,), 1), ((0,), -1)]) == Polynomial.zero()


def test_product_examples():
    x = Polynomial.from_word((0,))
    one = Polynomial.one()
    assert poly_mul(one, x - one) == x - one
    assert poly_mul(x - one, x + one).format(X, OX) == "x*x - 1"
    assert Polynomial.from_word((0,), Fraction(1, 2)).format(X) == "1/2*x"


def test_tip_examples_un2():
    fam = Family(2)
    o = un_order(2)
    a = o.alphabet
    # w1_2*b1_2 under the adopted reading (see the decisions ledger)
    assert tip(beta(fam, fam.u, 1, 1), o) == w("w1_2", "b1_2", alphabet=a)
    assert tip(gamma(fam, fam.u), o) == w("w2_2", "b2_2", alphabet=a)
    assert tip(Polynomial.from_word((1, 0)), ORDER) == (1, 0)
    with pytest.raises(ValueError):
        tip(Polynomial.zero(), ORDER)


def test_augmentation():
    pres = build_presentation(2)
    eps = pres.augmentation
    assert extend_multiplicatively(eps, Polynomial.one()) == 1
    assert all(extend_multiplicatively(eps, r) == 0 for r in pres.relations)
    a = pres.alphabet
    assert extend_multiplicatively(eps, Polynomial.from_word(w("w1_2", alphabet=a))) == 0
    assert extend_multiplicatively(eps, Polynomial.from_word(w("w1_1", alphabet=a))) == 1
    with pytest.raises(InvalidInput):
        extend_multiplicatively({0: 1}, Polynomial.from_word((0, 1)))


@given(words, words, words)
def test_admissible(a, b, c):
    if compare_words(ORDER, a, b) < 0:
        assert compare_words(ORDER, c + a, c + b) < 0
        assert compare_words(ORDER, a + c, b + c) < 0


@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple), min_size=2, max_size=8))
def test_strict_total_on_stratum(ws):
    ranked = sorted(set(ws), key=ORDER.key)
    for u, v in zip(ranked, ranked[1:]):
        assert compare_words(ORDER, u, v) == -1 and compare_words(ORDER, v, u) == 1


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p - p == Polynomial.zero()
    assert p * Polynomial.one() == p == Polynomial.one() * p


@given(nonzero_polys, nonzero_polys)
def test_tip_multiplicative(p, q):
    assert tip(p * q, ORDER) == tip(p, ORDER) + tip(q, ORDER)


@given(polys, polys)
def test_augmentation_is_multiplicative(p, q):
    vals = (Fraction(2), Fraction(-1, 3), Fraction(0))
    assert extend_multiplicatively(vals, p * q) == extend_multiplicatively(vals, p) * extend_multiplicatively(vals, q)
