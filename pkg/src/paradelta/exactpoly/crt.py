"""Word-size primes and Chinese remaindering in the symmetric range."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import InconsistentResidues

# 31-bit primes keep every product of two residues inside int64.
WORD_PRIME_CEILING = 2 ** 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit: int) -> list[int]:
    """All primes p < limit (sieve)."""
    if limit < 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def first_primes(count: int) -> list[int]:
    out = []
    n = 2
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def word_primes(start: int = WORD_PRIME_CEILING) -> Iterator[int]:
    """Descending primes below ``start``."""
    n = start - 1
    while n > 2:
        if is_prime(n):
            yield n
        n -= 2 if n % 2 else 1


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def symmetric(value: int, modulus: int) -> int:
    value %= modulus
    return value - modulus if value > modulus // 2 else value


@dataclass
class PrimeResidueSystem:
    """Images of one integer target modulo several distinct primes."""

    primes: list[int] = field(default_factory=list)
    residues: list[int] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise InconsistentResidues("primes must be pairwise distinct")

    @property
    def modulus(self) -> int:
        m = 1
        for p in self.primes:
            m *= p
        return m

    def add(self, p: int, residue: int) -> None:
        if p in self.primes:
            raise InconsistentResidues(f"prime {p} already present")
        self.primes.append(p)
        self.residues.append(residue % p)


def crt_reconstruct(system: PrimeResidueSystem) -> int:
    """Unique representative of the residues in (-M/2, M/2]."""
    if len(system.primes) != len(system.residues):
        raise InconsistentResidues(
            f"{len(system.residues)} residues for {len(system.primes)} primes")
    value, modulus = 0, 1
    for p, r in zip(system.primes, system.residues):
        value, modulus = crt_step(value, modulus, r, p)
    # (-M/2, M/2]: the upper endpoint stays positive
    value %= modulus
    return value - modulus if value > modulus // 2 else value


def crt_step(value: int, modulus: int, residue: int, p: int) -> tuple[int, int]:
    """Garner step: extend ``value mod modulus`` by ``residue mod p``."""
    t = (residue - value) * pow(modulus, -1, p) % p
    return value + modulus * t, modulus * p


def crt_vector(values: Sequence[int], modulus: int, residues: Sequence[int], p: int) -> list[int]:
    """Vectorised Garner step over many targets sharing the same moduli."""
    inv = pow(modulus % p, -1, p)
    return [v + modulus * ((r - v) * inv % p) for v, r in zip(values, residues)]
