"""Exact linear algebra: rational matrices and matrices of polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import StructuralError
from .numbers import as_fraction
from .poly import Poly, exact_divide

Matrix = list  # list of rows


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def to_fraction_matrix(M) -> list[list[Fraction]]:
    return [[as_fraction(c) for c in row] for row in M]


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    if A and len(A[0]) != k:
        raise StructuralError("matrix shapes do not match")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                a = A[i][t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = [list(map(as_fraction, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}``, one vector per free column, in column order."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    if any(len(row) != n for row in M):
        raise StructuralError("inverse of a non-square matrix")
    aug = [list(map(as_fraction, row)) + identity(n)[i] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise StructuralError("singular matrix")
    return [row[n:] for row in R]


def is_invertible(M) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and rank(M) == n


def rational_det(M):
    n = len(M)
    return determinant([[Poly.const(1, c) for c in row] for row in M]).constant_value() if n else Fraction(1)


def determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a square matrix of polynomials."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise StructuralError("determinant of a non-square matrix")
    if n == 0:
        raise StructuralError("empty matrix")
    nv = M[0][0].nvars
    A = [list(row) for row in M]
    for row in A:
        for p in row:
            if p.nvars != nv:
                raise StructuralError("matrix entries have different variable counts")
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    sign = 1
    prev = Poly.one(nv)
    for k in range(n - 1):
        if A[k][k].is_zero:
            p = next((i for i in range(k + 1, n) if not A[i][k].is_zero), None)
            if p is None:
                return Poly.zero(nv)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                q = exact_divide(num, prev)
                if q is None:
                    raise AssertionError("Bareiss step not exact")
                A[i][j] = q
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def minor(M, i: int, j: int):
    return [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]


def adjugate(M: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    n = len(M)
    nv = M[0][0].nvars
    if n == 1:
        return [[Poly.one(nv)]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = determinant(minor([list(r) for r in M], j, i))
            out[i][j] = c if (i + j) % 2 == 0 else -c
    return out


def poly_matmul(A, B):
    nv = A[0][0].nvars
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Poly.zero(nv)
            for t in range(k):
                if not A[i][t].is_zero and not B[t][j].is_zero:
                    s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def charpoly(A) -> Poly:
    """``det(t I - A)`` as a univariate polynomial in t."""
    n = len(A)
    t = Poly.var(1, 0)
    M = [[(t if i == j else Poly.zero(1)) - as_fraction(A[i][j]) for j in range(n)] for i in range(n)]
    return determinant(M)


def resultant(a: Poly, b: Poly, v: int) -> Poly:
    """Sylvester resultant of ``a`` and ``b`` with respect to variable ``v``."""
    a._check(b)
    if a.is_zero or b.is_zero:
        return Poly.zero(a.nvars)
    m, n = a.degree_in(v), b.degree_in(v)
    if m == 0:
        return a ** n
    if n == 0:
        return b ** m
    ca, cb = a.coefficients_in(v), b.coefficients_in(v)
    zero = Poly.zero(a.nvars)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in ca.items():
            row[i + m - k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in cb.items():
            row[i + n - k] = c
        rows.append(row)
    return determinant(rows)
