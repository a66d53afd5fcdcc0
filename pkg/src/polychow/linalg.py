"""Small exact linear algebra over Q.

Rank uses fraction-free (Bareiss) elimination on integer matrices; rational
input is cleared of denominators row by row first.  The remaining routines
(row reduction, null spaces, particular solutions) work over Fraction and
are only ever applied to desk-sized systems.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in fr)) if fr else 1
        out.append([int(v * den) for v in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(v) for v in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one basis vector per free column."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution of A x = b, or None if the system is inconsistent."""
    if not rows:
        return [Fraction(0)] * ncols
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    if not any(v != 0 for v in target):
        return True
    if not vectors:
        return False
    return bareiss_rank(list(vectors)) == bareiss_rank(list(vectors) + [list(target)])


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))
