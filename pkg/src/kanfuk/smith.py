"""Smith normal form over the integers with unimodular transforms.

Matrices are lists of rows of Python ints, so all arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(A: Matrix, v: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal, ``diagonal`` its nonzero entries.

    ``V_inv`` is the inverse of ``V``; all of ``U``, ``V``, ``V_inv`` are unimodular.
    """

    diagonal: tuple[int, ...]
    U: Matrix
    V: Matrix
    V_inv: Matrix

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(A: Matrix, m: int | None = None, n: int | None = None) -> SmithForm:
    m = len(A) if m is None else m
    n = (len(A[0]) if A else 0) if n is None else n
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        if q:
            for row in D:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            # V' = V E, E = I + q e_src e_dst^T, so V'^{-1} = (I - q e_src e_dst^T) V^{-1}
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < best):
                    best, pivot = abs(D[i][j]), (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
                        if abs(D[i][t]) < abs(D[t][t]):
                            swap_rows(t, i)
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
                        if abs(D[t][j]) < abs(D[t][t]):
                            swap_cols(t, j)
            if done:
                # divisibility: fold in any entry of the remaining block not divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    diag = tuple(D[i][i] for i in range(t))
    return SmithForm(diag, U, V, Vi)
