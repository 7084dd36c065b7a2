"""The free unitary quantum group U_n^+ and its closed-form Anick resolution.

Generators are ``w{j}_{i}`` (white) and ``b{j}_{i}`` (black), the star
involution swaps the colours, and ``sigma(i) = n + 1 - i``.

A matrix variant is a pair of bits ``(star, transposed)``:

* ``(False, t)`` has entries ``w`` at ``(j, i)``, or at ``(i, j)`` when ``t`` is set;
* ``(True, t)`` has entries ``b`` at ``(sigma(j), sigma(i))``, swapped likewise.

The two sigma variants are told apart by ``convention``.  Under the
default ``"transposed"`` reading the dagger partner of ``u`` is
``(True, True)``, so the relations spell out ``u u* = 1``.  Under
``"plain"`` it is ``(True, False)``.  Both readings give a Groebner basis
with the same tips (the two algebras differ by relabelling the black
generators), but only the default one presents U_n^+ and agrees with the
four-term resolution in :mod:`ncanick.quasiiso`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .anick import AnickResolution, ModuleVector
from .ncpoly import Alphabet, MonomialOrder, ONE, Polynomial, Word
from .presentation import Presentation
from .rewrite import RewriteSystem, check_diamond, complete, core_obstructions, reduce_gb

CONVENTIONS = ("transposed", "plain")
VARIANT_NAMES = ("u", "uT", "uS", "uD")


class UnsupportedParameter(ValueError):
    pass


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise UnsupportedParameter(f"U_n^+ needs n >= 2, got {n!r}")


@dataclass(frozen=True)
class Variant:
    star: bool
    transposed: bool

    def T(self) -> "Variant":
        return Variant(self.star, not self.transposed)


class Family:
    """The four matrices u, u^T, u^{sigma*}, u^{sigma dagger} for one convention."""

    def __init__(self, n: int, convention: str = "transposed"):
        _check_n(n)
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.n = n
        self.convention = convention
        flip = convention == "transposed"
        self.u = Variant(False, False)
        self.uT = Variant(False, True)
        self.uD = Variant(True, flip)
        self.uS = Variant(True, not flip)
        self.variants = (self.u, self.uT, self.uS, self.uD)

    def name(self, v: Variant) -> str:
        return VARIANT_NAMES[self.variants.index(v)]

    def by_name(self, name: str) -> Variant:
        return self.variants[VARIANT_NAMES.index(name)]

    def sigma(self, i: int) -> int:
        return self.n + 1 - i

    def dagger(self, v: Variant) -> Variant:
        return Variant(not v.star, v.transposed ^ (self.convention == "transposed"))

    def sstar(self, v: Variant) -> Variant:
        return Variant(not v.star, v.transposed ^ (self.convention != "transposed"))

    def p(self, ell: int, v: Variant) -> Variant:
        """The parity twist: ``v`` for odd ``ell``, its dagger partner for even ``ell``."""
        return v if ell % 2 else self.dagger(v)

    def gen(self, black: bool, j: int, i: int) -> int:
        n = self.n
        return (n * n if black else 0) + (j - 1) * n + (i - 1)

    def entry(self, v: Variant, j: int, i: int) -> int:
        a, b = (i, j) if v.transposed else (j, i)
        if v.star:
            return self.gen(True, self.sigma(a), self.sigma(b))
        return self.gen(False, a, b)


def un_alphabet(n: int) -> Alphabet:
    _check_n(n)
    labels = [f"w{j}_{i}" for j in range(1, n + 1) for i in range(1, n + 1)]
    labels += [f"b{j}_{i}" for j in range(1, n + 1) for i in range(1, n + 1)]
    m = n * n
    involution = tuple(k + m if k < m else k - m for k in range(2 * m))
    return Alphabet(tuple(labels), involution)


def un_order(n: int, negative_control: bool = False) -> MonomialOrder:
    """Black below white; whites ascending, blacks descending in (row, col).

    With ``negative_control`` both colours are ascending instead.
    """
    fam = Family(n)
    pairs = [(j, i) for j in range(1, n + 1) for i in range(1, n + 1)]
    blacks = [fam.gen(True, j, i) for j, i in (pairs if negative_control else reversed(pairs))]
    whites = [fam.gen(False, j, i) for j, i in pairs]
    return MonomialOrder(un_alphabet(n), tuple(blacks + whites))


@dataclass(frozen=True)
class UnPresentation(Presentation):
    n: int = 2
    convention: str = "transposed"
    labels: tuple = ()

    @property
    def family(self) -> Family:
        return Family(self.n, self.convention)


def relation(fam: Family, v: Variant, j: int, i: int) -> Polynomial:
    s_ = fam.sigma
    terms = [((fam.entry(v, j, s_(s)), fam.entry(fam.dagger(v), s, s_(i))), 1) for s in range(1, fam.n + 1)]
    if j == i:
        terms.append((ONE, -1))
    return Polynomial(terms)


def build_presentation(n: int, convention: str = "transposed", negative_control: bool = False) -> UnPresentation:
    fam = Family(n, convention)
    rels, labels = [], []
    for v in fam.variants:
        for j, i in product(range(1, n + 1), repeat=2):
            rels.append(relation(fam, v, j, i))
            labels.append((fam.name(v), j, i))
    alphabet = un_alphabet(n)
    aug = tuple(Fraction(int(j == i)) for _c in (0, 1) for j in range(1, n + 1) for i in range(1, n + 1))
    pres = UnPresentation(alphabet, un_order(n, negative_control), tuple(rels), aug, n, convention, tuple(labels))
    pres.check_augmentation()
    return pres


def beta(fam: Family, v: Variant, j: int, i: int) -> Polynomial:
    return relation(fam, v, j, i)


def gamma(fam: Family, v: Variant) -> Polynomial:
    n, s_ = fam.n, fam.sigma
    vd = fam.dagger(v)
    terms = [((fam.entry(v, n, n), fam.entry(vd, 1, 1)), 1), (ONE, n - 2)]
    for s in range(2, n + 1):
        for t in range(1, n):
            terms.append(((fam.entry(v, t, s_(s)), fam.entry(vd, s, s_(t))), -1))
    return Polynomial(terms)


def closed_groebner_set(n: int, convention: str = "transposed") -> frozenset:
    fam = Family(n, convention)
    out = {gamma(fam, v) for v in fam.variants}
    for v in fam.variants:
        for j, i in product(range(1, n + 1), repeat=2):
            if (j, i) != (n, n):
                out.add(beta(fam, v, j, i))
    return frozenset(out)


def closed_groebner(n: int, convention: str = "transposed") -> RewriteSystem:
    order = un_order(n)
    rules = sorted(closed_groebner_set(n, convention), key=lambda g: order.key(max(g.words(), key=order.key)))
    return RewriteSystem(order, rules)


def closed_core(n: int, convention: str = "transposed") -> set:
    fam = Family(n, convention)
    return {
        (fam.entry(v, j, n), fam.entry(fam.dagger(v), 1, fam.sigma(i)))
        for v in fam.variants
        for j, i in product(range(1, n + 1), repeat=2)
    }


def closed_chain(n: int, ell: int, v: Variant | str, j: int, i: int, fam: Family | None = None) -> Word:
    fam = fam or Family(n)
    if isinstance(v, str):
        v = fam.by_name(v)
    if ell < 1:
        raise ValueError("closed chains start in degree 1")
    if not (1 <= j <= n and 1 <= i <= n):
        raise ValueError("index out of range")
    s_ = fam.sigma
    vd = fam.dagger(v)
    if ell == 1:
        return (fam.entry(v, j, s_(i)),)
    loop = (fam.entry(vd, 1, n), fam.entry(v, 1, n))
    if ell % 2 == 0:
        return (fam.entry(v, j, n),) + loop * ((ell - 2) // 2) + (fam.entry(vd, 1, s_(i)),)
    return (fam.entry(v, j, n),) + loop * ((ell - 3) // 2) + (fam.entry(vd, 1, n), fam.entry(v, 1, s_(i)))


def closed_chain_set(n: int, ell: int, convention: str = "transposed") -> set:
    if ell == 0:
        return {ONE}
    fam = Family(n, convention)
    return {closed_chain(n, ell, v, j, i, fam) for v in fam.variants for j, i in product(range(1, n + 1), repeat=2)}


@dataclass(frozen=True)
class Term:
    """One summand ``coeff * chain (x) factor`` of a closed differential.

    ``chain`` is ``(variant, row, col)`` of degree ``ell - 1`` or None for
    the unit chain; ``factor`` is ``(variant, row, col)`` or None for 1.
    """

    label: str
    coeff: int
    chain: tuple | None
    factor: tuple | None


def closed_terms(fam: Family, ell: int, v: Variant, j: int, i: int) -> list:
    n, s_ = fam.n, fam.sigma
    rng = range(1, n + 1)
    vd, vs, vt = fam.dagger(v), fam.sstar(v), v.T()
    terms = []
    add = terms.append
    if ell == 1:
        add(Term("gen", 1, None, (v, j, s_(i))))
        if j == s_(i):
            add(Term("unit", -1, None, None))
        return terms
    if ell == 2:
        for s in rng:
            add(Term("sum", 1, (v, j, s), (vd, s, s_(i))))
        add(Term("flip", 1, (vd, s_(j), i), None))
        if j == n and i == n:
            for s in range(2, n + 1):
                for t in rng:
                    add(Term("nn.sum", -1, (v, t, s), (vd, s, s_(t))))
                add(Term("nn.flip", -1, (vd, s, s_(s)), None))
        return terms
    sgn = -1 if ell % 2 else 1
    P = fam.p(ell, v)
    PT = P.T()
    for s in rng:
        add(Term("sum", 1, (v, j, s), (P, s, s_(i))))
    add(Term("flip", sgn, (vd, s_(j), i), None))
    if j == n:
        add(Term("jn.head", 1, (vt, 1, 1), (PT, s_(i), n)))
        if ell == 3:
            for s in range(2, n):
                add(Term("jn.diag", 1, (vt, s, s), (PT, s_(i), n)))
        if i == n:
            for s in rng:
                add(Term("jn.in.sum", -1, (vt, 1, s), (PT, s, n)))
            add(Term("jn.in.flip", -sgn, (vs, n, 1), None))
    if j == 1 and i == n:
        add(Term("j1.in", sgn, (vs, 1, 1), None))
        if ell == 3:
            for s in range(2, n):
                add(Term("j1.in.diag", sgn, (vs, s, s), None))
    return terms


def closed_differential(n: int, ell: int, v: Variant | str, j: int, i: int,
                        fam: Family | None = None, flip: frozenset = frozenset()) -> ModuleVector:
    """The closed-form ``d_ell(c^v_ell(j, i) (x) 1)``.

    Summands whose ``(ell, label)`` is listed in ``flip`` get the opposite
    sign; this exists only to test the verification harness.
    """
    fam = fam or Family(n)
    if isinstance(v, str):
        v = fam.by_name(v)
    if ell < 1:
        raise ValueError("closed differentials start in degree 1")
    out = ModuleVector(ell - 1)
    for t in closed_terms(fam, ell, v, j, i):
        c = t.coeff * (-1 if (ell, t.label) in flip else 1)
        chain = ONE if t.chain is None else closed_chain(n, ell - 1, t.chain[0], t.chain[1], t.chain[2], fam)
        right = ONE if t.factor is None else (fam.entry(*t.factor),)
        out.add_term(chain, right, Fraction(c))
    return out


def un_resolution(n: int, lmax: int, sys: RewriteSystem | None = None,
                  convention: str = "transposed") -> AnickResolution:
    pres = build_presentation(n, convention)
    sys = sys or closed_groebner(n, convention)
    return AnickResolution(sys, pres.augmentation, lmax)


@dataclass
class UnEntry:
    check: str
    degree: int
    detail: str
    ok: bool


@dataclass
class UnReport:
    n: int
    lmax: int
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]


def _closed_dd(res: AnickResolution, fam: Family, ell: int, vec: ModuleVector, cache: dict):
    """Apply the closed d_{ell-1} to a vector of degree ell - 1."""
    if ell - 1 == 0:
        return res.augment(vec)
    out = ModuleVector(ell - 2)
    for (c, b), x in vec.entries.items():
        d = cache[(ell - 1, c)]
        out.iadd(res.act(d, b), x)
    return out


def verify_un(n: int, lmax: int, degree_bound: int = 6, flip: frozenset = frozenset(),
              res: AnickResolution | None = None, include_gb: bool = True,
              convention: str = "transposed") -> UnReport:
    """Compare every closed form with the generic machinery."""
    _check_n(n)
    report = UnReport(n, lmax)
    fam = Family(n, convention)
    pres = build_presentation(n, convention)
    closed = closed_groebner(n, convention)
    if include_gb:
        rsys = RewriteSystem(pres.order, pres.relations)
        report.entries.append(UnEntry("diamond.R", 0, f"{len(rsys)} relations", check_diamond(rsys).passed))
        done = complete(pres.relations, pres.order, degree_bound)
        ok = not done.partial and reduce_gb(done).rule_set() == closed.rule_set()
        report.entries.append(UnEntry("gb.closed", 0, f"{len(closed)} rules", ok))
        report.entries.append(UnEntry("core.closed", 0, f"{len(closed_core(n))} words",
                                      core_obstructions(closed) == closed_core(n, convention)))
    if res is None:
        res = AnickResolution(closed, pres.augmentation, lmax)
    for ell in range(0, lmax + 1):
        got = set(res.chain_words(ell))
        want = closed_chain_set(n, ell, convention)
        report.entries.append(UnEntry("chains", ell, f"{len(got)} chains", got == want))
    dcache: dict = {}
    for ell in range(1, lmax + 1):
        bad = []
        labels = set()
        for v in fam.variants:
            for j, i in product(range(1, n + 1), repeat=2):
                c = closed_chain(n, ell, v, j, i, fam)
                cd = closed_differential(n, ell, v, j, i, fam, flip)
                if (ell, c) in dcache and dcache[(ell, c)] != cd:
                    bad.append(f"{fam.name(v)}({j},{i}) inconsistent at coinciding chain")
                dcache.setdefault((ell, c), cd)
                if res.d_chain(ell, c) != cd:
                    bad.append(f"{fam.name(v)}({j},{i})")
                labels.add(c)
        detail = f"{len(labels)} chains" if not bad else "mismatch " + " ".join(bad)
        report.entries.append(UnEntry("d.closed=recursive", ell, detail, not bad))
    for ell in range(1, lmax + 1):
        bad = []
        for v in fam.variants:
            for j, i in product(range(1, n + 1), repeat=2):
                c = closed_chain(n, ell, v, j, i, fam)
                if _closed_dd(res, fam, ell, dcache[(ell, c)], dcache):
                    bad.append(f"{fam.name(v)}({j},{i})")
        detail = "zero" if not bad else "nonzero at " + " ".join(bad)
        report.entries.append(UnEntry("dd.closed", ell, detail, not bad))
    return report
