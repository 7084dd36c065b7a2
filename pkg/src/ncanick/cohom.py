"""Ext of the trivial module via Hom_A(-, k_eps) applied to a resolution.

Matrices put degree-(l-1) chains on rows and degree-l chains on columns.
``Hom(d_l)`` is the transpose, so its kernel dimension is the defect of
the transposed matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .anick import AnickResolution
from .ncpoly import evaluate_word


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    data: tuple

    @classmethod
    def from_rows(cls, rows_: list, cols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows_)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else ())

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        return RationalMatrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.data))

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]


def _integer_rows(m: RationalMatrix) -> list:
    out = []
    for r in m.data:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((k for k in range(r, nrows) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for k in range(r + 1, nrows):
            f = a[k][c]
            row_k, row_r = a[k], a[r]
            for j in range(c, ncols):
                row_k[j] = (p * row_k[j] - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank_defect(m: RationalMatrix) -> tuple:
    k = rank(m)
    return k, m.cols - k


def rref(m: RationalMatrix) -> tuple:
    """Reduced row echelon form and pivot columns, over Fractions."""
    a = [list(r) for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((k for k in range(r, m.rows) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for k in range(m.rows):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def nullspace(m: RationalMatrix) -> list:
    """A basis of {x : m x = 0}."""
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -a[row][f]
        basis.append(x)
    return basis


def solve(m: RationalMatrix, b: list):
    """One solution of ``m x = b``, or None."""
    aug = RationalMatrix(m.rows, m.cols + 1, tuple(tuple(r) + (Fraction(v),) for r, v in zip(m.data, b)))
    a, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for row, pc in enumerate(pivots):
        x[pc] = a[row][m.cols]
    return x


def apply_counit_functor(d, eps, chains_lo: list, chains_hi: list) -> RationalMatrix:
    """Matrix of d in chain bases after sending right factors through eps.

    ``d`` maps a degree-l chain to its image (a ModuleVector, or a scalar in
    degree 0); rows are indexed by ``chains_lo`` and columns by ``chains_hi``.
    """
    index = {c: k for k, c in enumerate(chains_lo)}
    cols = []
    for c in chains_hi:
        col = [Fraction(0)] * len(chains_lo)
        image = d(c)
        if isinstance(image, Fraction):
            if len(chains_lo) != 1:
                raise ValueError("degree 0 has a single target row")
            col[0] = image
        else:
            for (c2, b), x in image.entries.items():
                if c2 not in index:
                    raise ValueError(f"chain {c2} missing from the row basis")
                col[index[c2]] += x * evaluate_word(eps, b)
        cols.append(col)
    rows = [tuple(col[r] for col in cols) for r in range(len(chains_lo))]
    return RationalMatrix(len(chains_lo), len(chains_hi), tuple(rows))


def counit_matrix(res: AnickResolution, ell: int) -> RationalMatrix:
    lo = res.chain_words(ell - 1) if ell >= 1 else [None]
    return apply_counit_functor(lambda c: res.d_chain(ell, c), res.eps, lo, res.chain_words(ell))


def hom_rank_defect(res: AnickResolution, ell: int) -> tuple:
    """(rank, defect) of Hom(d_ell, k_eps)."""
    return rank_defect(counit_matrix(res, ell).transpose())


def ext_from_matrices(mats: list) -> tuple:
    """Ext^1..Ext^(k-1) from the counit matrices of d_1..d_k.

    Also returns the (defect, rank) of each Hom(d_l).
    """
    table = []
    for m in mats:
        k, nul = rank_defect(m.transpose())
        table.append((nul, k))
    dims = []
    for ell in range(1, len(mats)):
        e = table[ell][0] - table[ell - 1][1]
        if e < 0:
            raise ConsistencyError(f"negative Ext dimension in degree {ell}")
        dims.append(e)
    return dims, table


def ext_from_resolution(res: AnickResolution, lmax: int) -> tuple:
    """Ext^1..Ext^lmax and the (defect, rank) of Hom(d_l) for l = 1..lmax+1."""
    if res.lmax < lmax + 1:
        raise ValueError("resolution too short for the requested degrees")
    return ext_from_matrices([counit_matrix(res, ell) for ell in range(1, lmax + 2)])


def ext_dimensions(n: int, lmax: int, closed: bool = False) -> list:
    """Ext^1..Ext^lmax of U_n^+ from the recursive (default) or closed differentials."""
    from .unitary import closed_chain, closed_differential, Family, un_resolution

    if lmax < 1:
        raise ValueError("lmax must be at least 1")
    res = un_resolution(n, lmax + 1)
    if closed:
        fam = Family(n)
        table = {}
        for ell in range(1, lmax + 2):
            for v in fam.variants:
                for j, i in product(range(1, n + 1), repeat=2):
                    table.setdefault((ell, closed_chain(n, ell, v, j, i, fam)),
                                     closed_differential(n, ell, v, j, i, fam))
        res._dmemo.update(table)
    return ext_from_resolution(res, lmax)[0]


def kernel_relation_residuals(n: int, res: AnickResolution | None = None) -> list:
    """Residuals of g(c^{vS}_1(j,i)) + g(c^v_1(i,j)) over a kernel basis of Hom(d_2)."""
    from .unitary import Family, closed_chain, un_resolution

    res = res or un_resolution(n, 2)
    fam = Family(n)
    words = res.chain_words(1)
    index = {w: k for k, w in enumerate(words)}
    hom = counit_matrix(res, 2).transpose()
    out = []
    for g in nullspace(hom):
        for v in fam.variants:
            for j, i in product(range(1, n + 1), repeat=2):
                a = g[index[closed_chain(n, 1, fam.sstar(v), j, i, fam)]]
                b = g[index[closed_chain(n, 1, v, i, j, fam)]]
                out.append(a + b)
    return out
