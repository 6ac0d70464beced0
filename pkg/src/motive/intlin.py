"""Exact integer linear algebra: Smith form, Bareiss determinant, lattices.

Matrices are plain lists of rows of Python ints.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = list  # list[list[int]]


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def eye(n: int) -> IntMatrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(M: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * n
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def transpose(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in zip(*M)]


def hstack(*ms: Sequence[Sequence[int]]) -> IntMatrix:
    return [sum((list(m[i]) for m in ms), []) for i in range(len(ms[0]))]


def columns(M: Sequence[Sequence[int]], idx: Sequence[int]) -> IntMatrix:
    return [[row[j] for j in idx] for row in M]


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def smith_form(M: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Return (diag, U, V) with U M V diagonal, d1 | d2 | ..., all di >= 0.

    ``diag`` has min(rows, cols) entries; U and V are unimodular.
    """
    m, n = shape(M)
    A = [list(r) for r in M]
    U = eye(m)
    V = eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col dst += c * col src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return _finish([A[i][i] for i in range(min(m, n))], U, V, A)
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _finish([A[i][i] for i in range(min(m, n))], U, V, A)


def _finish(diag, U, V, A):
    for k, d in enumerate(diag):
        if d < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
            diag[k] = -d
    return diag, U, V


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    return smith_form(M)[0]


def rank(M: Sequence[Sequence[int]]) -> int:
    if not M or not M[0]:
        return 0
    return sum(1 for d in smith_invariants(M) if d)


def kernel_basis(M: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Saturated basis of {x : M x = 0}, returned as the columns of a matrix."""
    n = ncols if ncols is not None else shape(M)[1]
    if not M:
        return eye(n)
    diag, _, V = smith_form(M)
    r = sum(1 for d in diag if d)
    return columns(V, range(r, n))


def cokernel_invariants(M: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """(torsion invariants > 1, free rank) of Z^rows / M Z^cols."""
    m, n = shape(M)
    if n == 0:
        return [], m
    diag = smith_invariants(M)
    r = sum(1 for d in diag if d)
    return [d for d in diag if d > 1], m - r


def is_saturated(B: Sequence[Sequence[int]]) -> bool:
    """Columns of B are independent and span a saturated sublattice."""
    diag = smith_invariants(B)
    return len(diag) == shape(B)[1] and all(d == 1 for d in diag)


def inverse_unimodular(U: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction

    n = len(U)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for row in A:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


def solve_in_lattice(B: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer X with B X = Y, B of full column rank; ValueError if none exists."""
    m, r = shape(B)
    diag, U, V = smith_form(B)
    if any(d == 0 for d in diag[:r]):
        raise ValueError("basis matrix is not of full column rank")
    UY = matmul(U, Y)
    Z = []
    for i, row in enumerate(UY):
        if i < r:
            if any(x % diag[i] for x in row):
                raise ValueError("right-hand side is not in the lattice")
            Z.append([x // diag[i] for x in row])
        elif any(row):
            raise ValueError("right-hand side is not in the span")
    return matmul(V, Z)


def integer_span_contains(B: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> bool:
    try:
        solve_in_lattice(B, Y)
    except ValueError:
        return False
    return True
