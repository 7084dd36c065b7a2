"""Words, monomial orders and polynomials in the free algebra over Q.

A word is a tuple of generator indices; the empty tuple is the unit.
A :class:`MonomialOrder` ranks generators and extends the ranking
degreewise lexicographically.  Polynomials are immutable maps from
words to :class:`fractions.Fraction` coefficients with zeros removed.

>>> A = Alphabet(("x", "y"))
>>> o = MonomialOrder(A, (0, 1))
>>> p = Polynomial.from_word((0,)) - Polynomial.one()
>>> q = Polynomial.from_word((0,)) + Polynomial.one()
>>> (p * q).format(A)
'x*x - 1'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Word = tuple

ONE: Word = ()


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    labels: tuple
    involution: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("duplicate generator labels")
        if self.involution is not None:
            inv = tuple(self.involution)
            object.__setattr__(self, "involution", inv)
            if sorted(inv) != list(range(len(self.labels))):
                raise InvalidInput("involution is not a permutation")
            if any(inv[inv[k]] != k for k in range(len(inv))):
                raise InvalidInput("involution is not self-inverse")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInput(f"unknown generator {label!r}") from None

    def check_word(self, w: Word) -> None:
        for g in w:
            if not (isinstance(g, int) and 0 <= g < self.size):
                raise InvalidInput(f"generator index {g!r} outside alphabet")

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.labels[g] for g in w)


@dataclass(frozen=True)
class MonomialOrder:
    """Degreewise lexicographic extension of a total order on generators.

    ``base`` lists generator indices from smallest to largest.
    """

    alphabet: Alphabet
    base: tuple
    rank: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = tuple(self.base)
        object.__setattr__(self, "base", base)
        if sorted(base) != list(range(self.alphabet.size)):
            raise InvalidInput("base order must list every generator exactly once")
        rank = [0] * len(base)
        for r, g in enumerate(base):
            rank[g] = r
        object.__setattr__(self, "rank", tuple(rank))

    def key(self, w: Word) -> tuple:
        rank = self.rank
        return (len(w), tuple([rank[g] for g in w]))

    def heap_key(self, w: Word) -> tuple:
        # reversed key, so that heapq pops the largest word first
        rank = self.rank
        return (-len(w), tuple([-rank[g] for g in w]))


def compare_words(order: MonomialOrder, w1: Word, w2: Word) -> int:
    """Return -1, 0 or 1 as ``w1`` is smaller, equal or larger than ``w2``."""
    order.alphabet.check_word(w1)
    order.alphabet.check_word(w2)
    k1, k2 = order.key(w1), order.key(w2)
    return (k1 > k2) - (k1 < k2)


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = Fraction(c)
            if c:
                w = tuple(w)
                s = acc.get(w, 0) + c
                if s:
                    acc[w] = s
                else:
                    acc.pop(w, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._raw({ONE: Fraction(1)})

    @classmethod
    def from_word(cls, w: Word, coeff=1) -> "Polynomial":
        return cls({tuple(w): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            s = acc.get(w, 0) + c
            if s:
                acc[w] = s
            else:
                del acc[w]
        return Polynomial._raw(acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({w: c * a for w, a in self._terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    def lmul(self, a: Word) -> "Polynomial":
        return Polynomial._raw({a + w: c for w, c in self._terms.items()})

    def rmul(self, b: Word) -> "Polynomial":
        return Polynomial._raw({w + b: c for w, c in self._terms.items()})

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def sorted_terms(self, order: MonomialOrder) -> list:
        """Terms from largest to smallest word."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def format(self, alphabet: Alphabet, order: MonomialOrder | None = None) -> str:
        if not self._terms:
            return "0"
        if order is None:
            items = sorted(self._terms.items(), key=lambda t: (-len(t[0]), t[0]))
        else:
            items = self.sorted_terms(order)
        out = []
        for k, (w, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            word = alphabet.format_word(w)
            if not w:
                body = str(a)
            elif a == 1:
                body = word
            else:
                body = f"{a}*{word}"
            if k == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self._terms!r})"


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    acc: dict = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            s = acc.get(w, 0) + c1 * c2
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    return Polynomial._raw(acc)


def tip(p: Polynomial, order: MonomialOrder) -> Word:
    if not p:
        raise ValueError("the zero polynomial has no tip")
    return max(p.words(), key=order.key)


def leading_coefficient(p: Polynomial, order: MonomialOrder) -> Fraction:
    return p.coeff(tip(p, order))


def extend_multiplicatively(values: Mapping[int, object] | Sequence, p: Polynomial) -> Fraction:
    """Evaluate ``p`` under the algebra morphism given on generators by ``values``."""
    total = Fraction(0)
    for w, c in p.items():
        v = c
        for g in w:
            try:
                x = values[g]
            except (KeyError, IndexError):
                raise InvalidInput(f"no value for generator {g}") from None
            v = v * x
            if not v:
                break
        total += v
    return total


def evaluate_word(values, w: Word) -> Fraction:
    v = Fraction(1)
    for g in w:
        v *= values[g]
        if not v:
            break
    return v
