"""Exact integer and rational linear algebra on lists of rows."""

from __future__ import annotations

from math import gcd


def _row_hnf(rows, pivot_cols):
    """Unimodular row reduction to Hermite normal form on the first ``pivot_cols`` columns.

    Returns ``(matrix, rank)``; the first ``rank`` rows carry the pivots, the
    remaining rows vanish on the pivot columns.
    """
    A = [list(r) for r in rows]
    p = 0
    for col in range(pivot_cols):
        if p == len(A):
            break
        while True:
            nz = [i for i in range(p, len(A)) if A[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(A[i][col]))
            A[p], A[best] = A[best], A[p]
            piv = A[p][col]
            clean = True
            for i in range(p + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // piv
                    A[i] = [a - q * b for a, b in zip(A[i], A[p])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if all(A[i][col] == 0 for i in range(p, len(A))):
            continue
        if A[p][col] < 0:
            A[p] = [-a for a in A[p]]
        piv = A[p][col]
        for i in range(p):
            q = A[i][col] // piv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[p])]
        p += 1
    return A, p


def hnf(rows, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by integer ``rows``.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``;
    zero rows are dropped, so the result is a canonical basis.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    n = len(rows[0]) if ncols is None else ncols
    A, rank = _row_hnf(rows, n)
    return [tuple(r) for r in A[:rank]]


def rank(rows) -> int:
    return len(hnf(rows)) if rows else 0


def integer_kernel(rows, ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis (in HNF) of ``{x in Z^ncols : M x = 0}`` for integer matrix ``rows``."""
    m = len(rows)
    aug = []
    for j in range(ncols):
        left = [rows[i][j] for i in range(m)]
        aug.append(left + [1 if k == j else 0 for k in range(ncols)])
    A, r = _row_hnf(aug, m)
    return hnf([row[m:] for row in A[r:]], ncols)


def lattice_contains(basis, v) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return hnf(list(basis) + [v], len(v)) == hnf(basis, len(v))




def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v) if g else tuple(int(x) for x in v)




def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)
