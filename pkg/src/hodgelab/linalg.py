"""Exact linear algebra over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _clear_denominators(row: Sequence) -> list[int]:
    row = [Fraction(a) for a in row]
    lcm = math.lcm(*(a.denominator for a in row)) if row else 1
    return [int(a * lcm) for a in row]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination.

    Denominators are cleared row by row; among the candidate pivots in a
    column the entry of smallest bit length is chosen.

    >>> rank([[1, 2], [2, 4]])
    1
    >>> rank([[Fraction(1, 2), 1], [0, Fraction(1, 3)]])
    2
    """
    m = [_clear_denominators(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        candidates = [i for i in range(r, nrows) if m[i][c] != 0]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: (abs(m[i][c]).bit_length(), i))
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


def rref(rows: Sequence[Sequence]) -> Matrix:
    """Reduced row echelon form with zero rows dropped."""
    m = [[Fraction(a) for a in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]]


def row_space_basis(rows: Sequence[Sequence]) -> Matrix:
    return rref(rows)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []
