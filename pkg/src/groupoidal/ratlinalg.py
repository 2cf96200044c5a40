"""Exact linear algebra over the rationals on lists of ``Fraction`` rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def to_fractions(M: Sequence[Sequence]) -> list:
    return [[Fraction(v) for v in row] for row in M]


def rref(M: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    """Reduced row echelon form and pivot columns."""
    A = to_fractions(M)
    ncols = len(A[0]) if A else (ncols or 0)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        k = next((i for i in range(r, len(A)) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        p = A[r][c]
        A[r] = [v / p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1]) if M else 0


def nullspace(M: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : M x = 0}`` as a list of vectors."""
    R, pivots = rref(M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(M: Sequence[Sequence], b: Sequence, ncols: int) -> Optional[list]:
    """One rational solution of ``M x = b``, or None."""
    aug = [list(row) + [bv] for row, bv in zip(M, b)]
    R, pivots = rref(aug, ncols + 1) if aug else ([], [])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Fraction(0)] * cols
        for k in range(inner):
            a = row[k]
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in A]


def is_invertible(A: Sequence[Sequence]) -> bool:
    return len(A) == (len(A[0]) if A else 0) and rank(A) == len(A)
