"""Exact integer and polynomial arithmetic."""

from .bivariate import BivariatePolynomial
from .bivres import resultant_in_var, resultant_in_z, z_rows
from .crt import PrimeResidueSystem, crt_reconstruct, first_primes, is_prime, primes_below
from .interpolate import interpolate_integer, symmetric_abscissas
from .ops import compose, derivative, exact_divide, nth_root, rebase_4c, ring_ops
from .resultant import resultant_mod_p, resultant_univariate, sylvester_matrix
from .serialize import dumps, from_json_obj, loads, to_json_obj, to_text
from .univariate import IntegerPolynomial, gcd_over_q

__all__ = [
    "BivariatePolynomial",
    "IntegerPolynomial",
    "PrimeResidueSystem",
    "compose",
    "crt_reconstruct",
    "derivative",
    "dumps",
    "exact_divide",
    "first_primes",
    "from_json_obj",
    "gcd_over_q",
    "interpolate_integer",
    "is_prime",
    "loads",
    "nth_root",
    "primes_below",
    "rebase_4c",
    "resultant_in_var",
    "resultant_in_z",
    "resultant_mod_p",
    "resultant_univariate",
    "ring_ops",
    "sylvester_matrix",
    "symmetric_abscissas",
    "to_json_obj",
    "to_text",
    "z_rows",
]
