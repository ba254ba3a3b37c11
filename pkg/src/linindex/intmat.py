"""Tiny exact integer-matrix helpers on tuples of tuples.

Matrices here are at most a handful of rows, so plain Python beats numpy's
object arrays; determinant and inverse are delegated to sympy.
"""

from __future__ import annotations

from typing import Sequence

from sympy import Matrix

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: IntMatrix) -> IntMatrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    cols = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def matpow(A: IntMatrix, k: int) -> IntMatrix:
    if k < 0:
        raise ValueError("negative powers are not supported")
    result = identity(len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def det(A: IntMatrix) -> int:
    return int(Matrix(A).det()) if A else 1


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    if abs(det(U)) != 1:
        raise ValueError("matrix is not unimodular")
    return as_matrix(Matrix(U).inv().tolist())


def bilinear(G: IntMatrix, x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * g for xi, g in zip(x, matvec(G, y)))
