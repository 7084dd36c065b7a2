from fractions import Fraction

import pytest

from ncanick.anick import ModuleVector
from ncanick.ncpoly import ONE
from ncanick.quasiiso import QuasiIso, bfgkt_basis, bfgkt_ext, verify_quasiiso
from ncanick.unitary import UnsupportedParameter, closed_chain

# pinned after the first verification: composite - id = d D + D d
HOMOTOPY_SIGN = 1
HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def q2():
    return QuasiIso(2, lmax=6)


@pytest.fixture(scope="module")
def q3():
    return QuasiIso(3, lmax=4)


def vec(degree, *terms):
    out = ModuleVector(degree)
    for c, label, right in terms:
        out.add_term(label, right, Fraction(c))
    return out


def test_basis_sizes():
    for n in (2, 3):
        assert [len(bfgkt_basis(n, ell)) for ell in range(5)] == [2, 2 * n * n + 1, 2 * n * n, 2, 0]


def test_small_differential_examples(q2):
    assert q2.dprime(0, vec(0, (1, ("z", "w"), ONE))) == 1
    want = ModuleVector(2)
    for t in (1, 2):
        for s in (1, 2):
            want.add_term(("a", "b", t, s), q2.gen("b", t, s), 1)
    for s in (1, 2):
        want.add_term(("a", "w", s, s), ONE, -1)
    assert q2.d_small(3, ("x", "w")) == want


def test_map_examples(q2):
    assert q2.f_basis(0, ONE) == vec(0, (HALF, ("z", "w"), ONE), (HALF, ("z", "b"), ONE))
    assert q2.fprime_basis(1, ("y",)) == ModuleVector(1)
    for j in (1, 2):
        for i in (1, 2):
            got = q2.fprime_basis(1, ("b", "b", j, i))
            assert got == vec(1, (1, closed_chain(2, 1, "u", j, 3 - i), ONE))
    assert q2.Dprime_basis(1, ("z", "b")) == vec(1, (HALF, ("y",), ONE))
    assert q2.Dprime_basis(1, ("z", "w")) == vec(1, (-HALF, ("y",), ONE))


def test_D3_kronecker_case(q3):
    n = 3
    fam = q3.fam
    B = fam.sstar(fam.u)
    got = q3.D_basis(3, closed_chain(n, 2, "u", n, n))
    want = vec(3, (-1, closed_chain(n, 3, B, n, 1, fam), ONE), (-1, closed_chain(n, 3, B, 2, 2, fam), ONE))
    assert got == want
    assert q3.D_basis(3, closed_chain(n, 2, "u", 1, 2)) == ModuleVector(3)


@pytest.mark.parametrize("n", [2, 3])
def test_verify_passes(n):
    rep = verify_quasiiso(n, 6 if n == 2 else 5)
    assert rep.passed, [(e.check, e.degree, e.detail) for e in rep.failures]
    assert rep.sign == HOMOTOPY_SIGN


def test_other_sign_fails():
    rep = verify_quasiiso(2, 5, sign=-HOMOTOPY_SIGN)
    assert not rep.passed
    assert {e.check for e in rep.failures} == {"homotopy.small[-1]", "homotopy.anick[-1]"}


def test_uncorrected_values_fail_where_expected():
    rep = verify_quasiiso(2, 6, corrected=False)
    failed = {(e.check, e.degree) for e in rep.failures}
    assert failed == {
        ("chainmap.f", 3), ("composite.fprimef", 2), ("homotopy.small[+1]", 3),
        ("homotopy.anick[+1]", 2), ("homotopy.anick[+1]", 3), ("homotopy.anick[+1]", 4),
        ("homotopy.anick[+1]", 5),
    }


def test_lifted_f3(q2):
    assert any(q2.f_basis(3, w) for w in q2.res.chain_words(3))
    for w in q2.res.chain_words(3):
        x = ModuleVector.basis(3, w)
        assert q2.dprime(3, q2.f(3, x)) == q2.f(2, q2.res.differential(3, x))
        assert q2.f(3, q2.res.differential(4, ModuleVector.basis(4, q2.res.chain_words(4)[0]))) == ModuleVector(3)
    for e in bfgkt_basis(2, 3):
        x = ModuleVector.basis(3, e)
        assert q2.f(3, q2.fprime(3, x)) == x


def test_composite_examples(q2):
    assert q2.f(1, q2.fprime(1, ModuleVector.basis(1, ("y",)))) == ModuleVector(1)
    for e in bfgkt_basis(2, 2):
        x = ModuleVector.basis(2, e)
        assert q2.f(2, q2.fprime(2, x)) == x


def test_coincident_label_choice():
    # reading f_2 with the uT/uD formula at the coincident chains breaks f_2 f'_2 = id
    rep = verify_quasiiso(2, 4, prefer="second")
    assert ("composite.ffprime", 2) in {(e.check, e.degree) for e in rep.failures}


@pytest.mark.parametrize("n", [2, 3])
def test_ext_agrees(n):
    dims, table = bfgkt_ext(n, 5)
    assert dims == [n * n, n * n - 1, 1, 0, 0]
    assert table[4:] == [(0, 0), (0, 0)]


def test_rejects_small_n():
    with pytest.raises(UnsupportedParameter):
        QuasiIso(1)
