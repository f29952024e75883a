"""The polynomial tower of z -> z^2 + c.

iterates -> dynatomic polynomials -> multiplier polynomials (rebased to
C = 4c) -> delta factors, plus the composition Γ_k(t) = Φ_k(g(t)) with
g(t) = t^3 - t^2 + 7t + 1 and the rational parametrisations of the period-3
and period-4 multiplier curves.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .cache import DeltaCache, DeltaKey, default_cache
from .cyclotomic import cyclotomic_poly, divisors, euler_phi, mobius
from .errors import NotDivisible, UnsupportedPeriod
from .exactpoly import (
    BivariatePolynomial,
    IntegerPolynomial,
    exact_divide,
    gcd_over_q,
    nth_root,
    rebase_4c,
    resultant_in_var,
    resultant_in_z,
)

log = logging.getLogger(__name__)

ZC = ("z", "c")
XC = ("x", "c")
XCT = ("x", "C")

MAX_PERIOD = 6

# g(t) = t^3 - t^2 + 7t + 1, the x-coordinate of the X_3 parametrisation
G_POLY = IntegerPolynomial([1, 7, -1, 1], "t")
# C-coordinate -t^2 - 7
X3_C_MAP = IntegerPolynomial([-7, 0, -1], "t")


@lru_cache(maxsize=None)
def iterate(n: int) -> BivariatePolynomial:
    """f_c^{∘n}(z) as a polynomial in (z, c)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    z = BivariatePolynomial.var("z", ZC)
    if n == 0:
        return z
    prev = iterate(n - 1)
    return prev * prev + BivariatePolynomial.var("c", ZC)


@lru_cache(maxsize=None)
def iterate_derivative(n: int) -> BivariatePolynomial:
    """(f_c^{∘n})'(z) = prod_{k<n} 2 f_c^{∘k}(z)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = BivariatePolynomial.constant(1, ZC)
    for k in range(n):
        out = out * (iterate(k) * 2)
    return out


def nu(n: int) -> int:
    """deg_z Φ_n^* = sum_{d | n} μ(n/d) 2^d."""
    return sum(mobius(n // d) * 2 ** d for d in divisors(n))


@lru_cache(maxsize=None)
def dynatomic_poly(n: int) -> BivariatePolynomial:
    """Φ_n^*(z, c) = prod_{k | n} (f^{∘k}(z) - z)^{μ(n/k)}."""
    if n < 1:
        raise ValueError("n must be positive")
    z = BivariatePolynomial.var("z", ZC)
    num = BivariatePolynomial.constant(1, ZC)
    den = BivariatePolynomial.constant(1, ZC)
    for k in divisors(n):
        mu = mobius(n // k)
        if mu == 1:
            num = num * (iterate(k) - z)
        elif mu == -1:
            den = den * (iterate(k) - z)
    return exact_divide(num, den, "z")


@dataclass(frozen=True)
class MultiplierPolynomial:
    """δ̃_m(x, C) together with its degrees in x and C."""

    m: int
    tilde: BivariatePolynomial
    deg_x: int
    deg_C: int


def _check_period(m: int) -> None:
    if not 1 <= m <= MAX_PERIOD:
        raise UnsupportedPeriod(f"period m={m} outside the supported range 1..{MAX_PERIOD}")


def _multiplier_ok(m: int):
    def check(poly) -> bool:
        if not isinstance(poly, BivariatePolynomial) or poly.vars != XCT:
            return False
        v = nu(m)
        lc_c = poly.leading_coeff("C")
        return (poly.degree("x") == v // m and poly.is_monic_in("x")
                and poly.degree("C") == v // 2 and lc_c.degree == 0 and abs(lc_c.lc) == 1)
    return check


def multiplier_resultant(m: int) -> BivariatePolynomial:
    """Res_z(Φ_m^*(z, c), x - (f^{∘m})'(z)) = δ_m(x, c)^m."""
    phi = dynatomic_poly(m)
    deriv = iterate_derivative(m)
    b = {}
    for i, row in enumerate(deriv.rows("z")):
        b[i] = -BivariatePolynomial.from_univariate(row, XC)
    b[0] = b.get(0, BivariatePolynomial({}, XC)) + BivariatePolynomial.var("x", XC)
    v = nu(m)
    return resultant_in_z(phi, b, (v, m * v // 2), z="z", out_vars=XC)


def _compute_multiplier(m: int) -> BivariatePolynomial:
    log.info("computing multiplier polynomial for period %d", m)
    res = multiplier_resultant(m)
    delta = nth_root(res, m, "x")
    return rebase_4c(delta, "c", "C")


def multiplier_poly_tilde(m: int, cache: DeltaCache | None = None) -> MultiplierPolynomial:
    """δ̃_m(x, C) = δ_m(x, C/4); cached on disk."""
    _check_period(m)
    cache = cache or default_cache()
    tilde = cache.get_or_compute(DeltaKey("multiplier", (m,)), lambda: _compute_multiplier(m),
                                 _multiplier_ok(m))
    if not _multiplier_ok(m)(tilde):
        raise ArithmeticError(f"multiplier polynomial for m={m} violates its degree invariants")
    return MultiplierPolynomial(m, tilde, tilde.degree("x"), tilde.degree("C"))


def delta_factor_tilde(n: int, m: int, cache: DeltaCache | None = None) -> IntegerPolynomial:
    """Δ̃_{n,m}(C) = Δ_{n,m}(C/4).

    m < n: Res_x(Φ_{n/m}(x), δ̃_m(x, C)).  m = n: δ̃_n(1, C) divided by the
    delta factors Δ̃_{n,d} for the proper divisors d of n.
    """
    if n < 1 or m < 1 or n % m:
        raise ValueError(f"need m | n, got n={n}, m={m}")
    _check_period(m)
    cache = cache or default_cache()

    def compute() -> IntegerPolynomial:
        delta = multiplier_poly_tilde(m, cache).tilde
        if m < n:
            k = n // m
            return resultant_in_var(cyclotomic_poly(k, "x"), delta, "x", "C")
        quotient = delta.evaluate("x", 1)
        for d in divisors(n)[:-1]:
            quotient = quotient.exact_div(delta_factor_tilde(n, d, cache))
        return quotient

    def ok(poly) -> bool:
        return isinstance(poly, IntegerPolynomial) and abs(poly.lc) == 1

    return cache.get_or_compute(DeltaKey("delta_factor", (n, m)), compute, ok)


def is_degenerate(delta_factor: IntegerPolynomial) -> bool:
    """Constant delta factors (e.g. Δ̃_{2,2} = -1) are flagged, not normalised."""
    return delta_factor.degree <= 0


def gamma_poly(k: int) -> IntegerPolynomial:
    """Γ_k(t) = Φ_k(t^3 - t^2 + 7t + 1)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return cyclotomic_poly(k).compose(G_POLY)


def gamma_resultant(k: int) -> IntegerPolynomial:
    """Res_t(Γ_k(t), t^2 + 7 + C), the Γ-route to Δ̃_{3k,3}."""
    shifted = BivariatePolynomial({(2, 0): 1, (0, 0): 7, (0, 1): 1}, ("t", "C"))
    return resultant_in_var(gamma_poly(k), shifted, "t", "C")


def is_separable(poly: IntegerPolynomial) -> bool:
    return gcd_over_q(poly, poly.derivative()).degree == 0


def gamma_delta_identity(k: int, cache: DeltaCache | None = None) -> bool:
    """Res_t(Γ_k, t^2 + 7 + C) == Δ̃_{3k,3}(C) and Γ_k is separable."""
    lhs = gamma_resultant(k)
    rhs = delta_factor_tilde(3 * k, 3, cache)
    return lhs == rhs and is_separable(gamma_poly(k))


# t -> (x(t), C(t)) for the period-4 curve has poles at t = 0; both maps are
# stored as t^2 x(t) and t C(t).
X4_X_NUMERATOR = IntegerPolynomial([16, 8, 5, -6, -4, -2, -1], "t")
X4_C_NUMERATOR = IntegerPolynomial([-4, -3, 0, -1], "t")


def _substitute_laurent(delta: BivariatePolynomial, x_num, x_pole, c_num, c_pole, clear) -> IntegerPolynomial:
    """t^clear · δ(x_num / t^x_pole, c_num / t^c_pole) as a polynomial in t."""
    t = IntegerPolynomial([0, 1], "t")
    acc = IntegerPolynomial([], "t")
    for (i, j), coef in delta.terms.items():
        shift = clear - x_pole * i - c_pole * j
        if shift < 0:
            raise ValueError("clearing exponent too small")
        acc = acc + (x_num ** i) * (c_num ** j) * (t ** shift) * coef
    return acc


def parametrization_residual(which: str, x_map: IntegerPolynomial | None = None,
                             c_map: IntegerPolynomial | None = None,
                             cache: DeltaCache | None = None) -> IntegerPolynomial:
    """δ̃ evaluated along the parametrisation; zero exactly when it lies on the curve."""
    if which == "X3":
        delta = multiplier_poly_tilde(3, cache).tilde
        x_map = x_map if x_map is not None else G_POLY
        c_map = c_map if c_map is not None else X3_C_MAP
        return delta.substitute({"x": x_map, "C": c_map})
    if which == "X4":
        delta = multiplier_poly_tilde(4, cache).tilde
        x_num = x_map if x_map is not None else X4_X_NUMERATOR
        c_num = c_map if c_map is not None else X4_C_NUMERATOR
        dx, dc = delta.degree("x"), delta.degree("C")
        return _substitute_laurent(delta, x_num, 2, c_num, 1, 2 * dx + 3 * dc)
    raise ValueError(f"unknown curve {which!r}; expected 'X3' or 'X4'")


def verify_parametrization(which: str, x_map: IntegerPolynomial | None = None,
                           c_map: IntegerPolynomial | None = None,
                           cache: DeltaCache | None = None) -> bool:
    """True iff the parametrisation of X3 / X4 lands on δ̃_3 = 0 / δ̃_4 = 0.

    For X4 the optional maps are the numerators t^2·x(t) and t·C(t).
    """
    return parametrization_residual(which, x_map, c_map, cache).is_zero()


def delta_product_identity(n: int, cache: DeltaCache | None = None) -> bool:
    """δ̃_n(1, C) == prod_{m | n} Δ̃_{n,m}(C)."""
    lhs = multiplier_poly_tilde(n, cache).tilde.evaluate("x", 1)
    rhs = IntegerPolynomial([1], "C")
    for m in divisors(n):
        rhs = rhs * delta_factor_tilde(n, m, cache)
    return lhs == rhs


__all__ = [
    "MultiplierPolynomial",
    "NotDivisible",
    "delta_factor_tilde",
    "delta_product_identity",
    "dynatomic_poly",
    "euler_phi",
    "gamma_delta_identity",
    "gamma_poly",
    "gamma_resultant",
    "is_degenerate",
    "iterate",
    "iterate_derivative",
    "multiplier_poly_tilde",
    "nu",
    "verify_parametrization",
]
