from itertools import combinations, product

import pytest

from ncanick.ncpoly import tip
from ncanick.rewrite import RewriteSystem, check_diamond, reduce_gb
from ncanick.unitary import (
    Family, UnsupportedParameter, beta, build_presentation, closed_chain, closed_groebner,
    closed_terms, gamma, verify_un,
)


def names(a, word):
    return a.format_word(word)


def test_presentation_shape():
    pres = build_presentation(2)
    assert pres.alphabet.size == 8 and len(pres.relations) == 16
    k = pres.labels.index(("u", 1, 1))
    assert pres.relations[k].format(pres.alphabet, pres.order) == "w1_2*b1_2 + w1_1*b1_1 - 1"


def test_relations_spell_u_ustar():
    # sum_t w_{j,t} b_{i,t} - delta_{j,i} for the plain matrix u
    n = 3
    pres = build_presentation(n)
    a = pres.alphabet
    for j, i in product(range(1, n + 1), repeat=2):
        r = pres.relations[pres.labels.index(("u", j, i))]
        want = {(a.index(f"w{j}_{t}"), a.index(f"b{i}_{t}")) for t in range(1, n + 1)}
        assert {w for w in r.words() if w} == want


@pytest.mark.parametrize("bad", [1, 0, -2])
def test_small_n_rejected(bad):
    with pytest.raises(UnsupportedParameter):
        build_presentation(bad)
    with pytest.raises(UnsupportedParameter):
        closed_groebner(bad)


@pytest.mark.parametrize("n", [2, 3])
def test_closed_groebner_certified(n):
    g = closed_groebner(n)
    assert len(g) == 4 * (n * n - 1) + 2
    assert check_diamond(g).passed
    assert reduce_gb(g).rule_set() == g.rule_set()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tip_identities(n):
    fam = Family(n)
    order = closed_groebner(n).order
    s_ = fam.sigma
    for v in fam.variants:
        vd = fam.dagger(v)
        assert tip(gamma(fam, v), order) == (fam.entry(v, n, n), fam.entry(vd, 1, 1))
        for j, i in product(range(1, n + 1), repeat=2):
            assert tip(beta(fam, v, j, i), order) == (fam.entry(v, j, n), fam.entry(vd, 1, s_(i)))


def test_gamma_identification():
    fam = Family(3)
    assert gamma(fam, fam.u) == gamma(fam, fam.uT)
    assert gamma(fam, fam.uS) == gamma(fam, fam.uD)


def test_closed_chain_examples():
    a = build_presentation(2).alphabet
    assert names(a, closed_chain(2, 1, "u", 1, 1)) == "w1_2"
    assert names(a, closed_chain(2, 2, "u", 1, 1)) == "w1_2*b1_2"
    assert names(a, closed_chain(2, 3, "u", 2, 2)) == "w2_2*b1_2*w1_1"
    with pytest.raises(ValueError):
        closed_chain(2, 0, "u", 1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_chain_coincidences(n):
    fam = Family(n)
    s_ = fam.sigma
    r = range(1, n + 1)
    for ell in range(1, 6):
        labels = [(v, j, i) for v in fam.variants for j in r for i in r]
        for (v1, j1, i1), (v2, j2, i2) in combinations(labels, 2):
            same = closed_chain(n, ell, v1, j1, i1, fam) == closed_chain(n, ell, v2, j2, i2, fam)
            if ell == 1:
                expect = v2 == v1.T() and (j2, i2) == (s_(i1), s_(j1))
            elif ell == 2:
                expect = v2 == v1.T() and (j1, i1) == (j2, i2) == (n, n)
            else:
                expect = False
            assert same == expect, (ell, v1, j1, i1, v2, j2, i2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_base_recursion(n):
    fam = Family(n)
    for ell in range(2, 7):
        for v in fam.variants:
            for j, i in product(range(1, n + 1), repeat=2):
                assert closed_chain(n, ell, v, j, i, fam) == (
                    closed_chain(n, ell - 1, v, j, 1, fam) + (fam.entry(fam.p(ell, v), 1, fam.sigma(i)),))


@pytest.mark.parametrize("n, lmax", [(2, 6), (3, 5)])
def test_verify_un(n, lmax):
    rep = verify_un(n, lmax)
    assert rep.passed, rep.failures
    checks = {e.check for e in rep.entries}
    assert checks == {"diamond.R", "gb.closed", "core.closed", "chains", "d.closed=recursive", "dd.closed"}


@pytest.mark.parametrize("label", ["flip", "jn.head", "jn.in.flip", "j1.in", "jn.diag"])
def test_mutation_flags_exactly_users(label):
    n = 3
    fam = Family(n)
    rep = verify_un(n, 3, flip=frozenset({(3, label)}), include_gb=False)
    (entry,) = [e for e in rep.entries if e.check == "d.closed=recursive" and e.degree == 3]
    assert not entry.ok
    flagged = set(entry.detail.split()[1:])
    users = {f"{fam.name(v)}({j},{i})" for v in fam.variants for j, i in product(range(1, n + 1), repeat=2)
             if any(t.label == label for t in closed_terms(fam, 3, v, j, i))}
    assert flagged == users


def test_plain_reading_is_also_groebner():
    # the other reading differs by relabelling black generators, so the
    # diamond check cannot tell them apart
    for n in (2, 3):
        pres = build_presentation(n, "plain")
        assert check_diamond(RewriteSystem(pres.order, pres.relations)).passed
        assert verify_un(n, 4, convention="plain").passed
