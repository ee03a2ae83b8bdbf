"""Dense exact linear algebra over any field-like elements.

Matrices are lists of lists.  Entries only need +, -, *, / and truthiness
(empty == zero), which both Scalar and GaussRat provide.  Sizes here are tiny
(at most a few hundred rows), so plain Gauss-Jordan is the right tool.
"""

from __future__ import annotations

from .field import ONE, ZERO

__all__ = ["mat_det", "mat_mul", "mat_identity", "mat_invert", "mat_rank", "mat_rref"]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                a = Ai[k]
                if not a:
                    continue
                b = B[k][j]
                if not b:
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else Ai[0] - Ai[0])
        out.append(row)
    return out


def mat_identity(n, one=ONE, zero=ZERO):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_invert(A, one=ONE, zero=ZERO):
    """Gauss-Jordan inverse; raises ValueError when A is singular."""
    n = len(A)
    M = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = one / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def mat_det(A, one=ONE):
    """Determinant by fraction-free-ish Gaussian elimination (exact field ops)."""
    n = len(A)
    if n == 0:
        return one
    M = [list(row) for row in A]
    det = one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            return M[0][0] - M[0][0]
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col]
        inv = one / M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det


def mat_rref(A):
    """Reduced row echelon form; returns (rows, pivot_column_indices)."""
    M = [list(row) for row in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for rr in range(r, nrows):
            if M[rr][col]:
                piv = rr
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][col]
        M[r] = [x / lead for x in M[r]]
        for rr in range(nrows):
            if rr != r and M[rr][col]:
                f = M[rr][col]
                M[rr] = [a - f * b for a, b in zip(M[rr], M[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return M, pivots


def mat_rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(mat_rref(A)[1])
