"""Exact linear algebra over the integers and rationals.

Matrices are plain tuples of tuples.  Integer matrices hold ``int`` entries,
rational ones hold :class:`fractions.Fraction` entries.  Nothing here ever
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm, prod
from typing import Sequence

from .errors import SingularMatrixError

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


def _check_square(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError(f"matrix is not square ({n} rows)")
    return n


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss elimination; exact for arbitrary-size integers."""
    n = _check_square(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def invert_matrix(A: Sequence[Sequence[int]]) -> RatMatrix:
    """Gauss-Jordan inverse over the rationals."""
    n = _check_square(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        M[col], M[pivot_row] = M[pivot_row], M[col]
        pivot = M[col][col]
        M[col] = [x / pivot for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [x - factor * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*B))
        for row in A
    )


def transpose(A: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*A))


def common_denominator(M: RatMatrix) -> int:
    return lcm(*(x.denominator for row in M for x in row))


def atom_matrix(kind: str, exponents: Sequence[int]) -> IntMatrix:
    """Exponent matrix of a single atom in its own index order."""
    k = len(exponents)
    rows = []
    for t, b in enumerate(exponents):
        row = [0] * k
        row[t] = b
        if kind == "loop" or (kind == "chain" and t < k - 1):
            row[(t + 1) % k] += 1
        rows.append(tuple(row))
    return tuple(rows)


def _cyclic_product(b: Sequence[int], start: int, length: int) -> int:
    k = len(b)
    return prod(b[(start + t) % k] for t in range(length))


def atom_inverse(atom) -> RatMatrix:
    """Closed-form inverse of a Fermat, loop or chain atom matrix.

    Entry (i, j) is ``(-1)**((j - i) % k)`` times the product of the exponents
    strictly after ``j`` and strictly before ``i`` going around the cycle,
    divided by ``b_1...b_k + (-1)**(k-1)`` for loops and ``b_1...b_k`` for
    chains; chains are upper triangular.  Deliberately independent of
    :func:`invert_matrix` so each can check the other.
    """
    b = list(atom.exponents)
    k = len(b)
    if any(x < 2 for x in b):
        raise ValueError("atom exponents must be at least 2")
    if atom.kind == "fermat":
        return ((Fraction(1, b[0]),),)
    full = prod(b)
    if atom.kind == "loop":
        scale = full + (-1) ** (k - 1)
    elif atom.kind == "chain":
        scale = full
    else:
        raise ValueError(f"unknown atom kind {atom.kind!r}")
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if atom.kind == "chain" and j < i:
                row.append(Fraction(0))
                continue
            sign = -1 if (j - i) % k % 2 else 1
            entry = sign * _cyclic_product(b, j + 1, (i - j - 1) % k)
            row.append(Fraction(entry, scale))
        rows.append(tuple(row))
    return tuple(rows)
