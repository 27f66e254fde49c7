"""Exact rational linear algebra over ``fractions.Fraction``: row echelon, rank, determinant, null space."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Forward elimination; returns the reduced copy and its pivot columns."""
    m = to_fractions(rows)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(n_rows):
            if r == piv_r or m[r][piv_c] == 0:
                continue
            frp = m[r][piv_c] / fp
            for c in range(piv_c, n_cols):
                m[r][c] -= m[piv_r][c] * frp
        pivots.append(piv_c)
        piv_r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1]) if rows else 0


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix by fraction-exact Gaussian elimination."""
    m = to_fractions(rows)
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        pivot = next((r for r in range(c, size) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            if m[r][c] == 0:
                continue
            factor = m[r][c] / m[c][c]
            for k in range(c, size):
                m[r][k] -= factor * m[c][k]
    return det


def null_space(rows: Sequence[Sequence], n_cols: int) -> Matrix:
    """Basis of {v : rows . v = 0} in Q^n_cols."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    m, pivots = row_echelon(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis: Matrix = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc] / m[r][pc]
        basis.append(v)
    return basis


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))
