"""Presentations of augmented algebras and their text format.

Grammar (one statement per line, ``#`` starts a comment)::

    file        := { line }
    line        := gens | involution | order | relation | augment | blank
    gens        := "generators" ident { ident }
    involution  := "involution" ident ident { ident ident }
    order       := "order" ident { ident }          # smallest first
    relation    := "relation" poly                  # means poly = 0
    augment     := "augment" ident "=" rational { ident "=" rational }
    poly        := [sign] term { sign term }
    term        := rational | [rational "*"] ident { "*" ident }
    rational    := integer [ "/" integer ]
    ident       := letter { letter | digit | "_" }

Generators missing from every ``augment`` line are sent to 0.  When no
``order`` line is given the declaration order is used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ncpoly import Alphabet, MonomialOrder, Polynomial, extend_multiplicatively


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    order: MonomialOrder
    relations: tuple
    augmentation: tuple

    def check_augmentation(self) -> None:
        for k, r in enumerate(self.relations):
            if extend_multiplicatively(self.augmentation, r) != 0:
                raise PresentationError(f"augmentation does not kill relation {k + 1}")


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*]))")


def parse_polynomial(text: str, alphabet: Alphabet, line: int | None = None, offset: int = 0) -> Polynomial:
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character {text[pos:pos + 1]!r}", line, offset + pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise PresentationError("empty polynomial", line, offset + 1)
    terms = []
    k = 0
    first = True
    while k < len(tokens):
        sign = 1
        if tokens[k][0] == "op" and tokens[k][1] in "+-":
            sign = -1 if tokens[k][1] == "-" else 1
            k += 1
        elif not first:
            raise PresentationError("expected + or -", line, tokens[k][2])
        first = False
        coeff = Fraction(sign)
        word = []
        expect_factor = True
        while k < len(tokens):
            kind, val, col = tokens[k]
            if expect_factor:
                if kind == "num":
                    if word:
                        raise PresentationError("coefficient must come first", line, col)
                    try:
                        coeff *= Fraction(val)
                    except ZeroDivisionError:
                        raise PresentationError("zero denominator", line, col) from None
                elif kind == "id":
                    if val not in alphabet.labels:
                        raise PresentationError(f"undeclared generator {val!r}", line, col)
                    word.append(alphabet.labels.index(val))
                else:
                    raise PresentationError(f"unexpected {val!r}", line, col)
                expect_factor = False
                k += 1
            elif kind == "op" and val == "*":
                expect_factor = True
                k += 1
            else:
                break
        if expect_factor:
            col = tokens[k][2] if k < len(tokens) else offset + len(text) + 1
            raise PresentationError("missing factor", line, col)
        terms.append((tuple(word), coeff))
    return Polynomial(terms)


def parse_presentation(text: str) -> Presentation:
    gens: list = []
    pairs: list = []
    order_line = None
    rel_lines: list = []
    aug: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        head, _, rest = stripped.partition(" ")
        offset = body.index(head) + len(head) + 1
        words = rest.split()
        if head == "generators":
            for w in words:
                if not _IDENT.match(w):
                    raise PresentationError(f"bad generator name {w!r}", lineno)
                if w in gens:
                    raise PresentationError(f"generator {w!r} declared twice", lineno)
                gens.append(w)
        elif head == "involution":
            if len(words) % 2:
                raise PresentationError("involution needs pairs of generators", lineno)
            pairs.extend((lineno, words[k], words[k + 1]) for k in range(0, len(words), 2))
        elif head == "order":
            order_line = (lineno, words)
        elif head == "relation":
            rel_lines.append((lineno, rest, offset))
        elif head == "augment":
            for item in " ".join(words).replace(" = ", "=").split():
                name, eq, val = item.partition("=")
                if not eq:
                    raise PresentationError(f"expected name=value, got {item!r}", lineno)
                try:
                    aug[name] = (lineno, Fraction(val))
                except (ValueError, ZeroDivisionError):
                    raise PresentationError(f"bad rational {val!r}", lineno) from None
        else:
            raise PresentationError(f"unknown statement {head!r}", lineno, body.index(head) + 1)
    if not gens:
        raise PresentationError("no generators declared")
    involution = None
    if pairs:
        inv = list(range(len(gens)))
        for lineno, a, b in pairs:
            for x in (a, b):
                if x not in gens:
                    raise PresentationError(f"undeclared generator {x!r}", lineno)
            ia, ib = gens.index(a), gens.index(b)
            inv[ia], inv[ib] = ib, ia
        involution = tuple(inv)
    alphabet = Alphabet(tuple(gens), involution)
    if order_line is None:
        base = tuple(range(len(gens)))
    else:
        lineno, names = order_line
        for x in names:
            if x not in gens:
                raise PresentationError(f"undeclared generator {x!r}", lineno)
        if sorted(names) != sorted(gens):
            raise PresentationError("order must list every generator exactly once", lineno)
        base = tuple(gens.index(x) for x in names)
    order = MonomialOrder(alphabet, base)
    relations = []
    for lineno, rest, offset in rel_lines:
        p = parse_polynomial(rest, alphabet, lineno, offset)
        if not p:
            raise PresentationError("relation is zero", lineno)
        relations.append(p)
    values = [Fraction(0)] * len(gens)
    for name, (lineno, val) in aug.items():
        if name not in gens:
            raise PresentationError(f"undeclared generator {name!r}", lineno)
        values[gens.index(name)] = val
    pres = Presentation(alphabet, order, tuple(relations), tuple(values))
    pres.check_augmentation()
    return pres


def format_presentation(pres: Presentation) -> str:
    a = pres.alphabet
    lines = ["generators " + " ".join(a.labels)]
    if a.involution is not None:
        pairs = [(k, j) for k, j in enumerate(a.involution) if k < j]
        if pairs:
            lines.append("involution " + " ".join(f"{a.labels[k]} {a.labels[j]}" for k, j in pairs))
    lines.append("order " + " ".join(a.labels[g] for g in pres.order.base))
    for r in pres.relations:
        lines.append("relation " + r.format(a, pres.order))
    nonzero = [f"{a.labels[g]}={v}" for g, v in enumerate(pres.augmentation) if v]
    if nonzero:
        lines.append("augment " + " ".join(nonzero))
    return "\n".join(lines) + "\n"
