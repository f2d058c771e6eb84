"""Exact row reduction over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction` (ints are accepted
and promoted).  Nothing here is clever; sizes stay in the low hundreds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = to_fractions(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : rows @ x = 0}, one basis vector per free column."""
    if not rows:
        return [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class RowSpace:
    """Incrementally maintained reduced echelon basis of a subspace.

    ``reduce(v)`` returns the canonical representative of ``v`` modulo the
    span: every pivot coordinate is eliminated.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for p, row in self.rows.items():
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        """Add ``v`` to the span; False if it was already there."""
        v = self.reduce(v)
        p = next((c for c, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        lead = v[p]
        v = [x / lead for x in v]
        for q, row in self.rows.items():
            if row[p] != 0:
                f = row[p]
                self.rows[q] = [x - f * y for x, y in zip(row, v)]
        self.rows[p] = v
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)
