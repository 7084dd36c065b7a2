"""Reduction systems over the free algebra.

Each rule ``g`` rewrites its tip to ``tip - g/lc(g)``.  Reduction always
treats the largest reducible word first, using the lowest-indexed rule
whose tip occurs in it, at the leftmost occurrence.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ncpoly import MonomialOrder, Polynomial, Word, tip


class NotGroebner(ValueError):
    pass


def occurrences(sub: Word, w: Word) -> list:
    k = len(sub)
    return [p for p in range(len(w) - k + 1) if w[p:p + k] == sub]


def divides(sub: Word, w: Word) -> bool:
    k = len(sub)
    return any(w[p:p + k] == sub for p in range(len(w) - k + 1))


class RewriteSystem:
    def __init__(self, order: MonomialOrder, rules: Iterable[Polynomial], partial: bool = False):
        self.order = order
        self.rules = tuple(rules)
        self.partial = partial
        tips, tails = [], []
        first: dict = {}
        for k, g in enumerate(self.rules):
            if not g:
                raise ValueError(f"rule {k} is zero")
            t = tip(g, order)
            lc = g.coeff(t)
            tips.append(t)
            tails.append(Polynomial({w: -c / lc for w, c in g.items() if w != t}))
            first.setdefault(t, k)
        self.tips = tuple(tips)
        self.tails = tuple(tails)
        self._first = first
        self._lengths = sorted({len(t) for t in tips})

    def __len__(self) -> int:
        return len(self.rules)

    def find_reducer(self, w: Word):
        """Return ``(rule, position)`` for the preferred reduction of ``w``, or None."""
        best = None
        n = len(w)
        first = self._first
        for k in self._lengths:
            if k > n:
                break
            for p in range(n - k + 1):
                r = first.get(w[p:p + k])
                if r is not None and (best is None or (r, p) < best):
                    best = (r, p)
        return best

    def is_reducible(self, w: Word) -> bool:
        first = self._first
        n = len(w)
        for k in self._lengths:
            if k > n:
                break
            for p in range(n - k + 1):
                if w[p:p + k] in first:
                    return True
        return False

    def rule_set(self) -> frozenset:
        return frozenset(self.rules)


def normal_form(p: Polynomial, sys: RewriteSystem) -> Polynomial:
    order = sys.order
    work = dict(p.items())
    heap = [(order.heap_key(w), w) for w in work]
    heapq.heapify(heap)
    out: dict = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None:
            continue
        red = sys.find_reducer(w)
        if red is None:
            out[w] = c
            continue
        r, pos = red
        a, b = w[:pos], w[pos + len(sys.tips[r]):]
        for t, d in sys.tails[r].items():
            u = a + t + b
            old = work.get(u)
            if old is None:
                work[u] = c * d
                heapq.heappush(heap, (order.heap_key(u), u))
            else:
                s = old + c * d
                if s:
                    work[u] = s
                else:
                    del work[u]
    return Polynomial._raw(out)


class Reducer:
    """Word-level normal forms with a cache; only sound for confluent systems."""

    def __init__(self, sys: RewriteSystem):
        self.sys = sys
        self._cache: dict = {}

    def word(self, w: Word) -> Polynomial:
        nf = self._cache.get(w)
        if nf is None:
            if not self.sys.is_reducible(w):
                nf = Polynomial._raw({w: Fraction(1)})
            else:
                nf = normal_form(Polynomial._raw({w: Fraction(1)}), self.sys)
            self._cache[w] = nf
        return nf

    def poly(self, p: Polynomial) -> Polynomial:
        acc: dict = {}
        for w, c in p.items():
            for u, d in self.word(w).items():
                s = acc.get(u, 0) + c * d
                if s:
                    acc[u] = s
                else:
                    acc.pop(u, None)
        return Polynomial._raw(acc)


@dataclass(frozen=True, order=True)
class Ambiguity:
    rule1: int
    rule2: int
    left: Word
    right: Word
    kind: str = field(compare=True)

    def word(self, sys: RewriteSystem) -> Word:
        if self.kind == "inclusion":
            return sys.tips[self.rule2]
        return sys.tips[self.rule1] + self.right

    def branches(self, sys: RewriteSystem) -> tuple:
        if self.kind == "inclusion":
            one = sys.tails[self.rule1].lmul(self.left).rmul(self.right)
            two = sys.tails[self.rule2]
        else:
            one = sys.tails[self.rule1].rmul(self.right)
            two = sys.tails[self.rule2].lmul(self.left)
        return one, two


def _pair_ambiguities(sys: RewriteSystem, r1: int, r2: int) -> list:
    t1, t2 = sys.tips[r1], sys.tips[r2]
    found = []
    if r1 != r2 and len(t1) <= len(t2):
        if t1 != t2 or r1 < r2:
            for p in occurrences(t1, t2):
                found.append(Ambiguity(r1, r2, t2[:p], t2[p + len(t1):], "inclusion"))
    for k in range(1, min(len(t1), len(t2))):
        if t1[len(t1) - k:] == t2[:k]:
            found.append(Ambiguity(r1, r2, t1[:len(t1) - k], t2[k:], "overlap"))
    return found


def find_ambiguities(sys: RewriteSystem) -> list:
    found = []
    m = len(sys.rules)
    for r1 in range(m):
        for r2 in range(m):
            found.extend(_pair_ambiguities(sys, r1, r2))
    return sorted(set(found))


@dataclass
class DiamondEntry:
    ambiguity: Ambiguity
    resolved: bool
    left_nf: Polynomial
    right_nf: Polynomial


@dataclass
class DiamondReport:
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.resolved for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.resolved]


def check_diamond(sys: RewriteSystem) -> DiamondReport:
    entries = []
    for amb in find_ambiguities(sys):
        one, two = amb.branches(sys)
        n1, n2 = normal_form(one, sys), normal_form(two, sys)
        entries.append(DiamondEntry(amb, n1 == n2, n1, n2))
    return DiamondReport(entries)


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    return p.scale(1 / p.coeff(tip(p, order)))


def complete(rels: Sequence[Polynomial], order: MonomialOrder, degree_bound: int) -> RewriteSystem:
    """Buchberger-Mora completion up to ambiguity words of length ``degree_bound``.

    The result has ``partial`` set when some ambiguity beyond the bound was
    left unexamined.
    """
    rules = [_monic(g, order) for g in rels if g]
    sys = RewriteSystem(order, rules)
    queue: list = []
    partial = False

    def push(amb: Ambiguity) -> None:
        nonlocal partial
        d = len(amb.word(sys))
        if d > degree_bound:
            partial = True
        else:
            heapq.heappush(queue, (d, amb))

    for amb in find_ambiguities(sys):
        push(amb)
    while queue:
        _, amb = heapq.heappop(queue)
        one, two = amb.branches(sys)
        h = normal_form(one - two, sys)
        if not h:
            continue
        rules.append(_monic(h, order))
        sys = RewriteSystem(order, rules)
        new = len(rules) - 1
        for other in range(new + 1):
            for a in _pair_ambiguities(sys, other, new):
                push(a)
            if other != new:
                for a in _pair_ambiguities(sys, new, other):
                    push(a)
    return RewriteSystem(order, rules, partial=partial)


def _minimal_indices(sys: RewriteSystem) -> list:
    keep = []
    for i, t in enumerate(sys.tips):
        redundant = False
        for k, s in enumerate(sys.tips):
            if k == i:
                continue
            if s == t:
                if k < i:
                    redundant = True
            elif len(s) < len(t) and divides(s, t):
                redundant = True
            if redundant:
                break
        if not redundant:
            keep.append(i)
    return keep


def reduce_gb(sys: RewriteSystem) -> RewriteSystem:
    if sys.partial or not check_diamond(sys).passed:
        raise NotGroebner("reduce_gb needs a certified Groebner basis")
    order = sys.order
    keep = _minimal_indices(sys)
    minimal = RewriteSystem(order, [_monic(sys.rules[i], order) for i in keep])
    reduced = []
    for g, t in zip(minimal.rules, minimal.tips):
        rest = g - Polynomial.from_word(t)
        reduced.append(Polynomial.from_word(t) + normal_form(rest, minimal))
    reduced.sort(key=lambda g: order.key(tip(g, order)))
    return RewriteSystem(order, reduced)


def core_obstructions(sys: RewriteSystem) -> set:
    if sys.partial or not check_diamond(sys).passed:
        raise NotGroebner("the core is only defined for a certified Groebner basis")
    tips = set(sys.tips)
    return {t for t in tips if not any(s != t and divides(s, t) for s in tips)}
