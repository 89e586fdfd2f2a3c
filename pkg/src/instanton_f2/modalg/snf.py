"""Smith normal form over F2[x] and matrix helpers for lists of Poly2 rows."""

from __future__ import annotations

from .poly2 import ONE, ZERO, Poly2

Matrix = list[list[Poly2]]


def as_matrix(rows) -> Matrix:
    """Coerce nested sequences of Poly2, ints (bitmasks) or strings into a matrix."""
    out = []
    for row in rows:
        conv = []
        for e in row:
            if isinstance(e, Poly2):
                conv.append(e)
            elif isinstance(e, str):
                conv.append(Poly2.parse(e))
            else:
                conv.append(Poly2(int(e)))
        out.append(conv)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def diag(entries, m: int | None = None, n: int | None = None) -> Matrix:
    entries = list(entries)
    m = len(entries) if m is None else m
    n = len(entries) if n is None else n
    D = zeros(m, n)
    for i, e in enumerate(entries):
        D[i][i] = e
    return D


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    """Product of an m x k and a k x n matrix; ``inner`` gives k when m or n is 0."""
    m = len(A)
    k = len(B) if inner is None else inner
    n = len(B[0]) if B else 0
    out = zeros(m, n)
    for i in range(m):
        for t in range(k):
            a = A[i][t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(n):
                    if Bt[j]:
                        row[j] = row[j] + a * Bt[j]
    return out


def det(A: Matrix) -> Poly2:
    """Determinant by fraction-free (Bareiss) elimination; signs vanish in characteristic 2."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    M = [row[:] for row in A]
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] + M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                assert not r, "Bareiss division must be exact"
                M[i][j] = q
        prev = M[k][k]
    return M[n - 1][n - 1]


def is_diagonal(D: Matrix) -> bool:
    return all(not D[i][j] for i in range(len(D)) for j in range(len(D[i])) if i != j)


def diagonal(D: Matrix) -> list[Poly2]:
    m, n = shape(D)
    return [D[i][i] for i in range(min(m, n))]


def is_divisibility_chain(entries) -> bool:
    entries = list(entries)
    return all(a.divides(b) for a, b in zip(entries, entries[1:]))


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, q):
    """row_dst += q * row_src."""
    s, d = M[src], M[dst]
    for j in range(len(d)):
        if s[j]:
            d[j] = d[j] + q * s[j]


def _add_col(M, dst, src, q):
    """col_dst += q * col_src."""
    for row in M:
        if row[src]:
            row[dst] = row[dst] + q * row[src]


def snf_with_inverse(A) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """(U, D, V, U^-1) with U*A*V = D in Smith normal form.

    Pivot: the nonzero entry of least degree in the active block, ties broken
    by row-major position.
    """
    D = [row[:] for row in as_matrix(A)]
    m, n = len(D), (len(D[0]) if D else 0)
    U, Uinv, V = identity(m), identity(m), identity(n)
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = D[i][j]
                if e and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            _swap_rows(D, t, i)
            _swap_rows(U, t, i)
            _swap_cols(Uinv, t, i)
        if j != t:
            _swap_cols(D, t, j)
            _swap_cols(V, t, j)
        p = D[t][t]
        dirty = False
        for i in range(t + 1, m):
            if D[i][t]:
                q, r = divmod(D[i][t], p)
                _add_row(D, i, t, q)
                _add_row(U, i, t, q)
                # E^-1 = E in characteristic 2 for an elementary transvection
                _add_col(Uinv, t, i, q)
                dirty |= bool(r)
        for j in range(t + 1, n):
            if D[t][j]:
                q, r = divmod(D[t][j], p)
                _add_col(D, j, t, q)
                _add_col(V, j, t, q)
                dirty |= bool(r)
        if dirty:
            continue
        bad = next(
            ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if not p.divides(D[i][j])),
            None,
        )
        if bad is not None:
            i = bad[0]
            _add_row(D, t, i, ONE)
            _add_row(U, t, i, ONE)
            _add_col(Uinv, i, t, ONE)
            continue
        t += 1
    return U, D, V, Uinv


def snf(A) -> tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U*A*V = D diagonal, a divisibility chain, and det U = det V = 1."""
    U, D, V, _ = snf_with_inverse(A)
    return U, D, V
