"""Integer lattice tools: Smith and Hermite normal forms, saturation, kernels."""

from __future__ import annotations

from typing import Sequence

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(ncols)]
            for i in range(len(A))]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    m = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def smith_normal_form(B: Sequence[Sequence[int]], ncols: int | None = None
                      ) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ B @ V == D, U and V unimodular, and the
    diagonal of D nonnegative with d_1 | d_2 | ... ."""
    m = len(B)
    n = ncols if ncols is not None else (len(B[0]) if B else 0)
    D = [list(map(int, r)) for r in B]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for r in D:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # enforce divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Row-style Hermite normal form with zero rows removed.

    Pivots are positive, entries above each pivot lie in [0, pivot).
    """
    H = [list(map(int, r)) for r in rows]
    n = ncols if ncols is not None else (len(H[0]) if H else 0)
    r = 0
    for c in range(n):
        # gcd-combine column c into row r
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            others = [i for i in range(r + 1, len(H)) if H[i][c]]
            if not others:
                break
            for i in others:
                q = H[i][c] // H[r][c]
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
            if r == len(H):
                break
    return [row for row in H[:r] if any(row)]


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """HNF basis of (Q-span of rows) intersected with Z^ncols."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    U, D, V = smith_normal_form(rows, ncols)
    rank = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    Vinv = inverse_unimodular(V)
    return hermite_normal_form(Vinv[:rank], ncols)


def inverse_unimodular(V: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction

    n = len(V)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(V)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    out = []
    for r in m:
        row = r[n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Z-basis (as rows) of {x in Z^ncols : rows . x = 0}."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return identity(ncols)
    U, D, V = smith_normal_form(rows, ncols)
    rank = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return hermite_normal_form([[V[i][j] for i in range(ncols)] for j in range(rank, ncols)], ncols)


def integer_left_kernel(cols_matrix: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
    """Z-basis of {a in Z^nrows : a . B = 0} for an nrows x k matrix B."""
    if not cols_matrix or not cols_matrix[0]:
        return identity(nrows)
    k = len(cols_matrix[0])
    BT = [[cols_matrix[i][j] for i in range(nrows)] for j in range(k)]
    return integer_kernel(BT, nrows)
