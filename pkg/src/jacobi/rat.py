"""Exact rational sparse linear algebra.

Vectors are plain dicts mapping a column index to a nonzero Fraction.
"""
from __future__ import annotations

from fractions import Fraction

Q = Fraction


class Inconsistent(Exception):
    """Raised when a linear system has no solution."""


def vec(entries) -> dict:
    """Build a sparse vector from pairs, dropping zeros."""
    out: dict = {}
    for k, c in entries:
        c = out.get(k, 0) + c
        if c:
            out[k] = Q(c)
        else:
            out.pop(k, None)
    return out


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place."""
    for k, c in x.items():
        v = y.get(k, 0) + a * c
        if v:
            y[k] = v
        else:
            del y[k]


class RowEchelonBasis:
    """Rows in reduced row-echelon form.

    The pivot of a row is its smallest column under ``order`` (by default the
    natural order of the column keys).  Every pivot column is absent from all
    other rows and every pivot entry is 1.
    """

    def __init__(self, order=None):
        self.rows: dict = {}
        self.order = order

    def _key(self, col):
        return col if self.order is None else self.order[col]

    def _pivot(self, v: dict):
        return min(v, key=self._key)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows, key=self._key)

    def reduce(self, v: dict) -> dict:
        """Residual of v modulo the row span; the input is not modified."""
        r = dict(v)
        rows = self.rows
        for col in [c for c in r if c in rows]:
            c = r.get(col)
            if c:
                axpy(r, -c, rows[col])
        return r

    def insert(self, v: dict) -> dict:
        r = self.reduce(v)
        if not r:
            return r
        p = self._pivot(r)
        inv = 1 / r[p]
        row = {k: c * inv for k, c in r.items()}
        for other in self.rows.values():
            c = other.get(p)
            if c:
                axpy(other, -c, row)
        self.rows[p] = row
        return r

    def copy(self) -> "RowEchelonBasis":
        b = RowEchelonBasis(self.order)
        b.rows = {p: dict(r) for p, r in self.rows.items()}
        return b


def rref_insert(basis: RowEchelonBasis, v: dict):
    """Insert v into basis (in place); return (basis, residual of v)."""
    r = basis.insert(v)
    return basis, r


def rank(vectors, order=None) -> int:
    b = RowEchelonBasis(order)
    for v in vectors:
        b.insert(v)
    return b.rank


def solve_affine(A: list, b: dict) -> dict:
    """One solution x of A x = b with free variables set to zero.

    ``A`` is a list of sparse rows, ``b`` a sparse vector indexed by row
    number.  Raises Inconsistent if b is not in the column span.
    """
    # eliminate on augmented rows; the column key None holds the rhs
    aug = RowEchelonBasis(order=_AugOrder())
    for i, row in enumerate(A):
        r = dict(row)
        rhs = b.get(i, 0)
        if rhs:
            r[None] = Q(rhs)
        res = aug.insert(r)
        if res and set(res) == {None}:
            raise Inconsistent(f"row {i} reduces to 0 = {res[None]}")
    x = {}
    for p, row in aug.rows.items():
        if p is None:
            raise Inconsistent("0 = 1")
        c = row.get(None, 0)
        if c:
            x[p] = c
    return x


class _AugOrder:
    # the rhs column sorts after every real column
    def __getitem__(self, col):
        return (1, 0) if col is None else (0, col)
