"""Anick's resolution for an augmented algebra with a known Groebner basis.

Chains are numbered so that degree 0 is the unit, degree 1 the generators
and degree 2 the obstruction core.  Positions in chain indices are 1-based.

The differential ``d`` and the splitting ``i`` are computed by their mutual
recursion.  Right factors are always kept in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .ncpoly import ONE, Polynomial, Word, evaluate_word
from .rewrite import Reducer, RewriteSystem, core_obstructions, occurrences


class ChainError(ValueError):
    pass


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class ChainRecord:
    degree: int
    word: Word
    alpha: tuple = ()
    beta: tuple = ()

    def __len__(self) -> int:
        return len(self.word)


def _core_occurrences(word: Word, core) -> list:
    occ = []
    for c in core:
        for p in occurrences(c, word):
            occ.append((p + 1, p + len(c)))
    return sorted(occ)


def _index_sequences(m: int, ell: int, occ: list):
    """All (alpha, beta) satisfying the pre-chain inequalities on a word of length m."""
    if ell == 2:
        for a, b in occ:
            if a == 1 and b == m:
                yield (1,), (m,)
        return
    k = ell - 1
    starts: dict = {}
    for a, b in occ:
        starts.setdefault(a, []).append(b)

    def extend(alpha, beta):
        s = len(alpha)
        if s == k:
            if beta[-1] == m:
                yield tuple(alpha), tuple(beta)
            return
        for a, b in occ:
            if a <= alpha[-1] or a > beta[-1] or b <= beta[-1]:
                continue
            if s >= 2 and a <= beta[-2]:
                continue
            if s + 1 < k and b >= m:
                continue
            yield from extend(alpha + [a], beta + [b])

    for b in starts.get(1, ()):
        if b < m:
            yield from extend([1], [b])


def is_prechain(word: Word, ell: int, core) -> bool:
    if ell == 0:
        return word == ONE
    if ell == 1:
        return len(word) == 1
    occ = _core_occurrences(word, core)
    return next(_index_sequences(len(word), ell, occ), None) is not None


def chain_indices(word: Word, ell: int, core):
    """Chain indices of ``word`` as an ``ell``-chain, or None if it is not one.

    This follows the descriptive definition literally and is used to
    re-check every chain produced by :func:`enumerate_chains`.
    """
    if ell <= 1:
        return ((), ()) if is_prechain(word, ell, core) else None
    m = len(word)
    occ = _core_occurrences(word, core)
    memo: dict = {}

    def pre(s, lp):
        key = (s, lp)
        if key not in memo:
            memo[key] = is_prechain(word[:s], lp, core)
        return memo[key]

    found = []
    for alpha, beta in _index_sequences(m, ell, occ):
        ok = True
        for lp in range(2, ell + 1):
            for s in range(1, beta[lp - 2]):
                if pre(s, lp):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append((alpha, beta))
    if not found:
        return None
    if len(set(found)) > 1:
        raise ChainError(f"chain indices of {word} are not unique: {found}")
    return found[0]


def enumerate_chains(core: Iterable[Word], lmax: int, generators: Iterable[int]) -> list:
    """Chains of degree 0..lmax, each degree sorted by word."""
    core = sorted({tuple(c) for c in core})
    for c in core:
        if len(c) < 2:
            raise ChainError("core words must have length at least 2")
    gens = sorted(set(generators))
    out = [[ChainRecord(0, ONE)]]
    if lmax >= 1:
        out.append([ChainRecord(1, (g,)) for g in gens])
    if lmax >= 2:
        out.append([ChainRecord(2, c, (1,), (len(c),)) for c in core])
    for ell in range(3, lmax + 1):
        found = {}
        for prev in out[ell - 1]:
            w, m = prev.word, len(prev.word)
            lo = prev.alpha[0] if ell == 3 else prev.beta[-2]
            for c in core:
                for a in range(lo + 1, m + 1):
                    inside = m - a + 1
                    if len(c) > inside and c[:inside] == w[a - 1:]:
                        cand = w + c[inside:]
                        if cand in found:
                            continue
                        idx = chain_indices(cand, ell, core)
                        if idx is not None and idx[0][:-1] == prev.alpha and idx[1][:-1] == prev.beta:
                            found[cand] = ChainRecord(ell, cand, idx[0], idx[1])
        out.append([found[k] for k in sorted(found)])
    return out


def deconcatenate(c: ChainRecord) -> tuple:
    if c.degree == 0:
        raise ChainError("deconcatenate is undefined in degree 0")
    if c.degree == 1:
        return ONE, c.word
    if c.degree == 2:
        return c.word[:1], c.word[1:]
    cut = c.beta[-2]
    return c.word[:cut], c.word[cut:]


def reconcatenate(c: ChainRecord, d: Word, core, is_reducible) -> tuple:
    """The map r on combinatorial cycles; returns ``(new chain word, rest)``."""
    ell, w = c.degree, c.word
    m = len(w)
    d = tuple(d)
    if is_reducible(d):
        raise ChainError("right factor is not normal")
    if ell == 0:
        if not d:
            raise ChainError("(1, 1) is not a cycle")
        return d[:1], d[1:]
    _, b = deconcatenate(c)
    if not is_reducible(b + d):
        raise ChainError("not a combinatorial cycle")
    full = w + d
    if ell == 1:
        lo = 0
    elif ell == 2:
        lo = 1
    else:
        lo = c.beta[-2]
    candidates = [
        (a, e) for a, e in _core_occurrences(full, core)
        if lo < a <= m < e and (ell != 1 or a == 1)
    ]
    if not candidates:
        raise ChainError("no straddling core word")
    a, e = min(candidates)
    return full[:e], full[e:]


class ModuleVector:
    """Element of a free right module, keyed by (chain word, normal word)."""

    __slots__ = ("degree", "entries")

    def __init__(self, degree: int, entries: dict | None = None):
        self.degree = degree
        self.entries = {} if entries is None else entries

    @classmethod
    def basis(cls, degree: int, chain: Word, right: Word = ONE, coeff=1) -> "ModuleVector":
        return cls(degree, {(tuple(chain), tuple(right)): Fraction(coeff)})

    def add_term(self, chain: Word, right: Word, coeff) -> None:
        key = (chain, right)
        s = self.entries.get(key, 0) + coeff
        if s:
            self.entries[key] = s
        else:
            self.entries.pop(key, None)

    def iadd(self, other: "ModuleVector", scale=1) -> "ModuleVector":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        for (c, b), x in other.entries.items():
            self.add_term(c, b, scale * x)
        return self

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        return self.copy().iadd(other)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self.copy().iadd(other, -1)

    def scale(self, c) -> "ModuleVector":
        c = Fraction(c)
        if not c:
            return ModuleVector(self.degree)
        return ModuleVector(self.degree, {k: c * x for k, x in self.entries.items()})

    def copy(self) -> "ModuleVector":
        return ModuleVector(self.degree, dict(self.entries))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.degree == other.degree and self.entries == other.entries

    __hash__ = None

    def chains(self) -> set:
        return {c for c, _ in self.entries}

    def format(self, alphabet) -> str:
        if not self.entries:
            return "0"
        parts = []
        for (c, b), x in sorted(self.entries.items()):
            parts.append(f"{x}*[{alphabet.format_word(c)}]({alphabet.format_word(b)})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ModuleVector({self.degree}, {self.entries!r})"


@dataclass
class SplittingCache:
    enabled: bool = True
    memo: dict = field(default_factory=dict)
    hits: int = 0

    def get(self, key):
        if not self.enabled:
            return None
        v = self.memo.get(key)
        if v is not None:
            self.hits += 1
        return v

    def put(self, key, value) -> None:
        if self.enabled:
            self.memo.setdefault(key, value)


class AnickResolution:
    def __init__(self, sys: RewriteSystem, augmentation, lmax: int, core=None, check_kernel: bool = True):
        if lmax < 0:
            raise ValueError("lmax must be nonnegative")
        self.sys = sys
        self.order = sys.order
        self.alphabet = sys.order.alphabet
        self.eps = tuple(Fraction(augmentation[g]) for g in range(self.alphabet.size))
        self.lmax = lmax
        self.core = sorted(core if core is not None else core_obstructions(sys))
        self.reducer = Reducer(sys)
        self.check_kernel = check_kernel
        self.chains = enumerate_chains(self.core, lmax + 1, range(self.alphabet.size))
        self.records = [{c.word: c for c in level} for level in self.chains]
        self.cache = SplittingCache()
        self._dmemo: dict = {}

    def chain_words(self, ell: int) -> list:
        return [c.word for c in self.chains[ell]]

    def record(self, ell: int, word: Word) -> ChainRecord:
        try:
            return self.records[ell][word]
        except (IndexError, KeyError):
            raise ChainError(f"{word} is not a {ell}-chain within the computed range") from None

    def _key(self, entry) -> tuple:
        c, b = entry
        return (self.order.key(c + b), len(c))

    def tip(self, v: ModuleVector):
        return max(v.entries, key=self._key)

    def act(self, v: ModuleVector, m: Word) -> ModuleVector:
        """Right action of the normal form of the word ``m``."""
        if not m:
            return v.copy()
        out = ModuleVector(v.degree)
        word_nf = self.reducer.word
        for (c, b), x in v.entries.items():
            for u, y in word_nf(b + m).items():
                out.add_term(c, u, x * y)
        return out

    def act_poly(self, v: ModuleVector, p: Polynomial) -> ModuleVector:
        out = ModuleVector(v.degree)
        for m, y in p.items():
            out.iadd(self.act(v, m), y)
        return out

    def augment(self, v: ModuleVector) -> Fraction:
        return sum((x * evaluate_word(self.eps, b) for (_, b), x in v.entries.items()), Fraction(0))

    def d_chain(self, ell: int, word: Word):
        """d_ell(c (x) 1) for a basis chain; a Fraction when ell == 0."""
        if ell == 0:
            return Fraction(1)
        key = (ell, word)
        hit = self._dmemo.get(key)
        if hit is not None:
            return hit
        if ell == 1:
            g = word[0]
            out = ModuleVector(0)
            out.add_term(ONE, word, Fraction(1))
            out.add_term(ONE, ONE, -self.eps[g])
        else:
            c = self.record(ell, word)
            a, b = deconcatenate(c)
            ab = ModuleVector.basis(ell - 1, a, b)
            inner = self.act(self.d_chain(ell - 1, a), b)
            out = ab - self.splitting(ell - 2, inner)
        self._dmemo[key] = out
        return out

    def differential(self, ell: int, x: ModuleVector):
        if x.degree != ell:
            raise ValueError(f"expected a vector of degree {ell}, got {x.degree}")
        if ell == 0:
            return self.augment(x)
        out = ModuleVector(ell - 1)
        for (c, b), coeff in x.entries.items():
            out.iadd(self.act(self.d_chain(ell, c), b), coeff)
        return out

    def splitting(self, ell: int, v: ModuleVector, cache: SplittingCache | None = None) -> ModuleVector:
        if v.degree != ell:
            raise ValueError(f"expected a vector of degree {ell}, got {v.degree}")
        if cache is None:
            cache = self.cache
        if self.check_kernel and v:
            dv = self.differential(ell, v)
            if dv:
                raise ContractViolation(f"vector is not in the kernel of d_{ell}")
        out = ModuleVector(ell + 1)
        rest = v.copy()
        while rest:
            c, d = self.tip(rest)
            lam = rest.entries[(c, d)]
            key = (ell, c, d)
            hit = cache.get(key)
            if hit is None:
                g, h = reconcatenate(self.record(ell, c), d, self.core, self.sys.is_reducible)
                image = self.act(self.d_chain(ell + 1, g), h)
                hit = (g, h, image)
                cache.put(key, hit)
            g, h, image = hit
            out.add_term(g, h, lam)
            rest.iadd(image, -lam)
        return out


@dataclass
class ComplexEntry:
    check: str
    degree: int
    chain: Word
    ok: bool


@dataclass
class ComplexReport:
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]


def verify_complex(res: AnickResolution, lmax: int, splitting: bool = True) -> ComplexReport:
    entries = []
    for ell in range(1, lmax + 1):
        for c in res.chain_words(ell):
            dd = res.differential(ell - 1, res.d_chain(ell, c))
            entries.append(ComplexEntry("dd", ell, c, not dd))
    if splitting:
        for ell in range(0, lmax):
            for c in res.chain_words(ell + 1):
                v = res.d_chain(ell + 1, c)
                ok = res.differential(ell + 1, res.splitting(ell, v)) == v
                entries.append(ComplexEntry("split", ell, c, ok))
    return ComplexReport(entries)
