"""Exact Gaussian elimination over Fraction."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Row = List[Fraction]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[List[Row], List[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    M = [[Fraction(v) for v in r] for r in rows if any(r)]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(M)) if M[k][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for k in range(len(M)):
            if k != r and M[k][col] != 0:
                f = M[k][col]
                M[k] = [a - f * b for a, b in zip(M[k], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Row]:
    """Basis of {v : rows @ v = 0}, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Row]:
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]


def det(A: Sequence[Sequence[Fraction]]) -> Fraction:
    M = [[Fraction(v) for v in r] for r in A]
    n = len(M)
    out = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if M[k][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out *= M[c][c]
        for k in range(c + 1, n):
            if M[k][c]:
                f = M[k][c] / M[c][c]
                M[k] = [a - f * b for a, b in zip(M[k], M[c])]
    return out
