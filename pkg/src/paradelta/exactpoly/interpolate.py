"""Exact interpolation over the integers."""

from __future__ import annotations

from typing import Sequence

from ..errors import NonIntegralInterpolant
from .univariate import IntegerPolynomial


def symmetric_abscissas(count: int) -> list[int]:
    """0, 1, -1, 2, -2, ... (``count`` values)."""
    out = [0]
    k = 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out[:count]


def interpolate_integer(points: Sequence[tuple[int, int]], var: str = "x") -> IntegerPolynomial:
    """Unique interpolant of degree < len(points) with integer coefficients.

    Newton divided differences stay integral for integer-coefficient data at
    integer nodes, so any inexact division proves the data is not of that form.
    """
    xs = [int(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissas must be pairwise distinct")
    n = len(xs)
    if n == 0:
        return IntegerPolynomial([], var)
    dd = [int(y) for _, y in points]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            num = dd[i] - dd[i - 1]
            den = xs[i] - xs[i - level]
            q, r = divmod(num, den)
            if r:
                raise NonIntegralInterpolant(
                    f"divided difference {num}/{den} is not an integer")
            dd[i] = q
    # Newton form -> monomial basis (Horner from the innermost node)
    coeffs = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        # coeffs * (t - xs[i]) + dd[i]
        shifted = [0] + coeffs
        for j, c in enumerate(coeffs):
            shifted[j] -= xs[i] * c
        shifted[0] += dd[i]
        coeffs = shifted
    return IntegerPolynomial(coeffs, var)
