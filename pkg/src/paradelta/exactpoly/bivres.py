"""Resultants that eliminate one variable from polynomials with parameters.

``resultant_in_z`` is the modular evaluation/interpolation engine: the two
remaining variables are sampled on an integer grid, univariate resultants
are taken modulo a growing list of 31-bit primes, values are lifted by CRT
and the result is interpolated exactly.  Random probes against a direct
modular Sylvester determinant guard the caller's degree bounds.
"""

from __future__ import annotations

import logging
import random
from typing import Mapping, Union

import numpy as np

from ..errors import DegreeBoundViolated, NonIntegralInterpolant, VariableMismatch
from .bivariate import BivariatePolynomial
from .crt import crt_vector, word_primes
from .interpolate import interpolate_integer, symmetric_abscissas
from .modres import batched_resultant_mod_p
from .resultant import det_mod_p, resultant_coeffs, sylvester_matrix
from .univariate import IntegerPolynomial

log = logging.getLogger(__name__)

ZInput = Union[BivariatePolynomial, Mapping[int, BivariatePolynomial]]

PROBE_SEED = 0x5EED
PROBE_COUNT = 3


def z_rows(poly: ZInput, z: str, out_vars: tuple[str, str]) -> list[BivariatePolynomial]:
    """Coefficients of ``z**i`` as bivariate polynomials in ``out_vars``.

    Accepts a bivariate polynomial in ``z`` and one of ``out_vars``, or an
    explicit mapping ``{i: coefficient}`` (used when the coefficients already
    involve both remaining variables, e.g. ``x - B(z, c)``).
    """
    zero = BivariatePolynomial({}, out_vars)
    if isinstance(poly, Mapping):
        top = max((i for i, c in poly.items() if not c.is_zero()), default=-1)
        return [zero + poly.get(i, zero) for i in range(top + 1)]
    if z not in poly.vars:
        return [zero + poly] if not poly.is_zero() else []
    other = poly.other_var(z)
    if other not in out_vars:
        raise VariableMismatch(f"{other!r} is neither {z!r} nor one of {out_vars!r}")
    return [BivariatePolynomial.from_univariate(r, out_vars) for r in poly.rows(z)]


def _eval_rows_on_grid(rows, xs, cs, p):
    """Evaluate every z-coefficient at every (x, c) grid point modulo p."""
    X = np.repeat(np.array(xs, dtype=np.int64) % p, len(cs))
    C = np.tile(np.array(cs, dtype=np.int64) % p, len(xs))
    max_i = max((i for r in rows for (i, _) in r.terms), default=0)
    max_j = max((j for r in rows for (_, j) in r.terms), default=0)
    xpow = [np.ones_like(X)]
    for _ in range(max_i):
        xpow.append(xpow[-1] * X % p)
    cpow = [np.ones_like(C)]
    for _ in range(max_j):
        cpow.append(cpow[-1] * C % p)
    out = np.zeros((X.shape[0], max(len(rows), 1)), dtype=np.int64)
    for k, r in enumerate(rows):
        acc = np.zeros_like(X)
        for (i, j), c in r.terms.items():
            acc = (acc + (c % p) * xpow[i] % p * cpow[j]) % p
        out[:, k] = acc
    return out


def _probe(rows_a, rows_b, result: BivariatePolynomial, used: set[int], rng) -> None:
    probe_primes = (q for q in word_primes(2 ** 61) if q not in used)
    for _ in range(PROBE_COUNT):
        q = next(probe_primes)
        x0 = rng.randrange(-10 ** 9, 10 ** 9)
        c0 = rng.randrange(-10 ** 9, 10 ** 9)
        av = [r.eval_mod(x0, c0, q) for r in rows_a] or [0]
        bv = [r.eval_mod(x0, c0, q) for r in rows_b] or [0]
        if len(av) == 1 or len(bv) == 1:
            expected = resultant_coeffs(av, bv) % q
        else:
            expected = det_mod_p(sylvester_matrix(av, bv), q)
        if result.eval_mod(x0, c0, q) != expected:
            raise DegreeBoundViolated(
                f"probe at ({x0}, {c0}) mod {q} disagrees; degree bounds too small")


def resultant_in_z(a: ZInput, b: ZInput, degree_bounds: tuple[int, int], *,
                   z: str = "z", out_vars: tuple[str, str] = ("x", "c"),
                   max_primes: int = 4000) -> BivariatePolynomial:
    """Res_z(a, b) as a polynomial in ``out_vars``.

    ``degree_bounds`` must bound the result's degree in each of ``out_vars``.
    Raises DegreeBoundViolated when the interpolated result fails a probe.
    """
    out_vars = tuple(out_vars)
    rows_a = z_rows(a, z, out_vars)
    rows_b = z_rows(b, z, out_vars)
    zero = BivariatePolynomial({}, out_vars)
    if not rows_a or not rows_b:
        return zero
    if len(rows_a) == 1 and len(rows_b) == 1:
        return BivariatePolynomial.constant(1, out_vars)
    deg_x, deg_c = degree_bounds
    xs = symmetric_abscissas(deg_x + 1)
    cs = symmetric_abscissas(deg_c + 1)

    values: list[int] | None = None
    modulus = 1
    prev_sym = None
    streak = 0
    used: set[int] = set()
    for p in word_primes():
        A = _eval_rows_on_grid(rows_a, xs, cs, p)
        B = _eval_rows_on_grid(rows_b, xs, cs, p)
        residues = batched_resultant_mod_p(A, B, p).tolist()
        if values is None:
            values = residues
        else:
            values = crt_vector(values, modulus, residues, p)
        modulus *= p
        used.add(p)
        half = modulus // 2
        sym = [v % modulus for v in values]
        sym = [v - modulus if v > half else v for v in sym]
        values = sym
        if sym == prev_sym:
            streak += 1
            # one agreement plus one extra confirmation prime
            if streak >= 2:
                break
        else:
            streak = 0
        prev_sym = sym
        if len(used) >= max_primes:
            raise DegreeBoundViolated("CRT did not stabilise within the prime budget")
    log.debug("resultant_in_z: %d grid points, %d primes", len(values), len(used))

    ncs = len(cs)
    # interpolate along c for each x, then along x for each power of c
    try:
        by_x = []
        for ix in range(len(xs)):
            poly_c = interpolate_integer(list(zip(cs, values[ix * ncs:(ix + 1) * ncs])), out_vars[1])
            by_x.append(poly_c)
        terms = {}
        for j in range(deg_c + 1):
            poly_x = interpolate_integer([(x, pc[j]) for x, pc in zip(xs, by_x)], out_vars[0])
            for i, coef in enumerate(poly_x.coeffs):
                if coef:
                    terms[(i, j)] = coef
    except NonIntegralInterpolant as exc:
        raise DegreeBoundViolated(f"grid values are not an integer polynomial: {exc}") from exc
    result = BivariatePolynomial(terms, out_vars)
    _probe(rows_a, rows_b, result, used, random.Random(PROBE_SEED))
    return result


def resultant_in_var(a, b, var: str, out_var: str, degree_bound: int | None = None) -> IntegerPolynomial:
    """Res_var(a, b) for polynomials in ``var`` and (optionally) ``out_var``.

    Each input may be an IntegerPolynomial in ``var`` or a BivariatePolynomial
    in (``var``, ``out_var``).  The result is computed exactly by evaluating
    ``out_var`` at integer points, taking exact univariate resultants and
    interpolating; the default degree bound is the Sylvester bound.
    """
    vars = (var, out_var)

    def rows_of(poly):
        if isinstance(poly, IntegerPolynomial):
            if poly.degree > 0 and poly.var != var:
                raise VariableMismatch(f"{poly.var!r} is not {var!r}")
            return [IntegerPolynomial([c], out_var) for c in poly.coeffs]
        return (BivariatePolynomial({}, vars) + poly).rows(var)

    ra, rb = rows_of(a), rows_of(b)
    if not ra or not rb:
        return IntegerPolynomial([], out_var)
    m, n = len(ra) - 1, len(rb) - 1
    if degree_bound is None:
        da = max(r.degree for r in ra)
        db = max(r.degree for r in rb)
        degree_bound = max(0, n * max(da, 0) + m * max(db, 0))
    points = []
    for t in symmetric_abscissas(degree_bound + 1):
        av = [r(t) for r in ra]
        bv = [r(t) for r in rb]
        points.append((t, resultant_coeffs(av, bv)))
    return interpolate_integer(points, out_var)


__all__ = ["resultant_in_z", "resultant_in_var", "z_rows"]
