"""Exact rational matrix arithmetic on fractions.Fraction entries.

Matrices are lists of lists of Fractions. Everything here is small
(n <= 8 in practice), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

Matrix = list[list[Fraction]]


def parse_rational(text) -> Fraction:
    """Parse "num/den", "int" or a plain int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Fraction) -> str:
    """Inverse of :func:`parse_rational`: "num/den" or "int"."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_matrix(rows) -> Matrix:
    """Coerce nested ints/strings/Fractions into a Fraction matrix."""
    return [[parse_rational(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return [[sum((a[i][s] * b[s][j] for s in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def vecmat(v, a: Matrix):
    """Row vector times matrix."""
    n = len(a)
    assert len(v) == n
    return [sum((v[i] * a[i][j] for i in range(n)), Fraction(0)) for j in range(len(a[0]))]


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def determinant(a: Matrix) -> Fraction:
    """Fraction Gaussian elimination with partial pivoting."""
    n = len(a)
    m = [row[:] for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(m[r][k]))
        if m[piv][k] == 0:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = Fraction(1) / m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] * inv
            if f == 0:
                continue
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return det


def inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [row[:] for row in a]
    inv = identity(n)
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(m[r][k]))
        if m[piv][k] == 0:
            raise ZeroDivisionError("matrix is singular")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            inv[k], inv[piv] = inv[piv], inv[k]
        f = Fraction(1) / m[k][k]
        m[k] = [x * f for x in m[k]]
        inv[k] = [x * f for x in inv[k]]
        for r in range(n):
            if r == k or m[r][k] == 0:
                continue
            g = m[r][k]
            m[r] = [x - g * y for x, y in zip(m[r], m[k])]
            inv[r] = [x - g * y for x, y in zip(inv[r], inv[k])]
    return inv


def congruence_diagonalize(a: Matrix) -> tuple[Matrix, list[Fraction]]:
    """Symmetric Gaussian elimination over the rationals.

    Returns (S, d) with S * a * S^T == diag(d) exactly. When every remaining
    diagonal entry vanishes but some off-diagonal a[i][j] != 0, the basis
    substitution x_i -> x_i + x_j, x_j -> x_i - x_j creates the pivot pair
    (2 a_ij, -2 a_ij) without leaving the rationals. Pivots are chosen with
    maximal absolute value so the float scaling built on top stays tame.
    """
    n = len(a)
    m = [row[:] for row in a]
    s = identity(n)

    def apply_row_pair(i, j):
        # x_i -> x_i + x_j, x_j -> x_i - x_j on both the transform and m
        si, sj = s[i][:], s[j][:]
        s[i] = [x + y for x, y in zip(si, sj)]
        s[j] = [x - y for x, y in zip(si, sj)]
        ri, rj = m[i][:], m[j][:]
        m[i] = [x + y for x, y in zip(ri, rj)]
        m[j] = [x - y for x, y in zip(ri, rj)]
        for r in range(n):
            ci, cj = m[r][i], m[r][j]
            m[r][i] = ci + cj
            m[r][j] = ci - cj

    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(m[r][r]))
        if m[piv][piv] == 0:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0),
                None,
            )
            if pair is None:
                break  # remaining block is identically zero
            apply_row_pair(*pair)
            piv = max(range(k, n), key=lambda r: abs(m[r][r]))
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            s[k], s[piv] = s[piv], s[k]
            for r in range(n):
                m[r][k], m[r][piv] = m[r][piv], m[r][k]
        inv = Fraction(1) / m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] * inv
            if f == 0:
                continue
            s[r] = [x - f * y for x, y in zip(s[r], s[k])]
            m[r] = [x - f * y for x, y in zip(m[r], m[k])]
            for rr in range(n):
                m[rr][r] -= f * m[rr][k]
    return s, [m[i][i] for i in range(n)]


def to_float(a: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a], dtype=float)
