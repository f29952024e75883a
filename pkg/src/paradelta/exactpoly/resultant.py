"""Univariate resultants, exact and modulo a prime.

Convention used everywhere: ``Res(A, B) = lc(A)**deg(B) * prod B(alpha)`` over
the roots of A, i.e. the Sylvester determinant with the rows of A first.
Degrees are *formal* (the length of the coefficient list given), which is
what an evaluated Sylvester matrix sees when a leading coefficient vanishes.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import VariableMismatch
from .univariate import IntegerPolynomial


def sylvester_matrix(a: Sequence[int], b: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of coefficient lists (index = exponent), A rows first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return rows


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(r) for r in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_mod_p(matrix: list[list[int]], p: int) -> int:
    n = len(matrix)
    m = [[v % p for v in r] for r in matrix]
    det = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        inv = pow(m[k][k], -1, p)
        det = det * m[k][k] % p
        row_k = m[k]
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                row_i = m[i]
                for j in range(k, n):
                    row_i[j] = (row_i[j] - f * row_k[j]) % p
    return det % p


def _formal(coeffs: Sequence[int]) -> list[int]:
    return list(coeffs) if coeffs else [0]


def resultant_univariate(a: IntegerPolynomial, b: IntegerPolynomial) -> int:
    """Exact resultant of two integer polynomials in the same variable."""
    if a.degree > 0 and b.degree > 0 and a.var != b.var:
        raise VariableMismatch(f"{a.var!r} vs {b.var!r}")
    return resultant_coeffs(a.coeffs, b.coeffs)


def resultant_coeffs(a: Sequence[int], b: Sequence[int]) -> int:
    a, b = _formal(a), _formal(b)
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    return bareiss_det(sylvester_matrix(a, b))


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def resultant_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> int:
    """Res(A, B) mod p with formal degrees, by the Euclidean algorithm."""
    a = [v % p for v in _formal(a)]
    b = [v % p for v in _formal(b)]
    m, n = len(a) - 1, len(b) - 1
    res = 1
    # bring both leading coefficients to nonzero values, tracking the factor
    if a[-1] == 0 and b[-1] == 0:
        return 0 if m + n > 0 else 1
    if a[-1] == 0:
        # Res(A, B) = (-1)^{mn} Res(B, A), then drop A's formal degree
        if (m * n) % 2:
            res = -res
        a_true = _strip(list(a))
        if not a_true:
            return res * pow(b[-1], m, p) % p if n == 0 else 0
        drop = m - (len(a_true) - 1)
        res = res * pow(b[-1], drop, p)
        a, b = b, a_true
        m, n = n, len(a_true) - 1
    elif b[-1] == 0:
        b_true = _strip(list(b))
        if not b_true:
            return pow(a[-1], n, p) if m == 0 else 0
        res = res * pow(a[-1], n - (len(b_true) - 1), p)
        b = b_true
        n = len(b) - 1
    # now lc(a), lc(b) nonzero: value = res * Res(a, b)
    while True:
        if m == 0:
            return res * pow(a[0], n, p) % p
        if n == 0:
            return res * pow(b[0], m, p) % p
        if m > n:
            if (m * n) % 2:
                res = -res
            a, b, m, n = b, a, n, m
        # m <= n: replace b by b mod a
        inv = pow(a[-1], -1, p)
        r = list(b)
        for k in range(n, m - 1, -1):
            q = r[k] * inv % p
            if q:
                for j in range(m + 1):
                    r[k - m + j] = (r[k - m + j] - q * a[j]) % p
        r = _strip(r[:m])
        if not r:
            return 0
        dr = len(r) - 1
        res = res * pow(a[-1], n - dr, p) % p
        b, n = r, dr
