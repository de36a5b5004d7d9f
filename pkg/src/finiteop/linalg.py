"""Small dense matrix helpers over any field type (Fraction or mpf).

Matrices are tuples of row tuples.  Sizes here never exceed a few dozen, so
plain Python loops are adequate and keep rational arithmetic exact.
"""
from __future__ import annotations


def identity(n: int, one=1):
    zero = one * 0
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def matmul(A, B):
    cols = list(zip(*B))
    zero = A[0][0] * 0 if A and A[0] else 0
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), zero) for col in cols) for row in A)


def transpose(A):
    return tuple(zip(*A))


def trace(A):
    return sum((A[i][i] for i in range(len(A))), A[0][0] * 0)


def submatrix(A, rows, cols=None):
    cols = rows if cols is None else cols
    return tuple(tuple(A[r][c] for c in cols) for r in rows)


def det(A):
    """Determinant by Gaussian elimination with largest-magnitude pivoting."""
    n = len(A)
    if n == 0:
        return 1
    rows = [list(r) for r in A]
    result = rows[0][0] * 0 + 1
    for c in range(n):
        pivot = max(range(c, n), key=lambda r: abs(rows[r][c]))
        if rows[pivot][c] == 0:
            return rows[0][0] * 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for r in range(c + 1, n):
            f = rows[r][c] / p
            if f != 0:
                rr, rc = rows[r], rows[c]
                for j in range(c + 1, n):
                    rr[j] -= f * rc[j]
    return result


def rank(A) -> int:
    """Exact rank; intended for the rational backend."""
    rows = [list(r) for r in A]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, n_rows):
            f = rows[i][c] / rows[r][c]
            if f != 0:
                for j in range(c, n_cols):
                    rows[i][j] -= f * rows[r][j]
        r += 1
        if r == n_rows:
            break
    return r
