"""Möbius function, totient, cyclotomic polynomials and their discriminants."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import isqrt

from .exactpoly import IntegerPolynomial
from .exactpoly.crt import prime_factors


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


_memo: dict[int, IntegerPolynomial] = {}
_memo_lock = threading.Lock()


def cyclotomic_poly(k: int, var: str = "x") -> IntegerPolynomial:
    """Φ_k, obtained by dividing x^k - 1 by Φ_d for every proper divisor d."""
    if k < 1:
        raise ValueError("k must be positive")
    with _memo_lock:
        cached = _memo.get(k)
    if cached is None:
        num = IntegerPolynomial.monomial(k) - 1
        for d in divisors(k)[:-1]:
            num = num.exact_div(cyclotomic_poly(d))
        cached = num
        with _memo_lock:
            _memo[k] = cached
    return cached.with_var(var)


def cyclotomic_discriminant(k: int) -> tuple[int, bool]:
    """Closed-form discriminant of Φ_k and whether it is a perfect square.

    (-1)^{φ(k)/2 · ω(k)} · k^{φ(k)} / prod_{p | k} p^{φ(k)/(p-1)};
    k = 2 is taken as 1.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k == 2:
        return 1, True
    phi = euler_phi(k)
    primes = prime_factors(k)
    value = k ** phi
    for p in primes:
        value //= p ** (phi // (p - 1))
    if ((phi // 2) * len(primes)) % 2:
        value = -value
    return value, value >= 0 and isqrt(value) ** 2 == value


@dataclass(frozen=True)
class CyclotomicRecord:
    k: int
    poly: IntegerPolynomial
    disc: int
    disc_is_square: bool

    @classmethod
    def build(cls, k: int) -> "CyclotomicRecord":
        disc, square = cyclotomic_discriminant(k)
        return cls(k, cyclotomic_poly(k), disc, square)
