"""Polynomials over prime fields: irreducibility, factor-degree patterns,
the degree-pattern sieve over Q, Table 1 scans and the mod-p congruence of
delta factors."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .cache import DeltaCache
from .cyclotomic import euler_phi
from .errors import PInvalidDividesK
from .exactpoly import IntegerPolynomial
from .exactpoly.crt import first_primes, prime_factors, primes_below

log = logging.getLogger(__name__)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class ModularPolynomial:
    """Polynomial over F_p; ``coeffs[i]`` is the residue of ``x**i``."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        self.p = p
        self.coeffs = tuple(_trim([int(c) % p for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModularPolynomial):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"ModularPolynomial({self.p}, {list(self.coeffs)})"

    def __add__(self, other: "ModularPolynomial") -> "ModularPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        return ModularPolynomial(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                          for i in range(n)])

    def __neg__(self) -> "ModularPolynomial":
        return ModularPolynomial(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "ModularPolynomial") -> "ModularPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ModularPolynomial":
        if isinstance(other, int):
            return ModularPolynomial(self.p, [c * other for c in self.coeffs])
        return ModularPolynomial(self.p, _mul(self.coeffs, other.coeffs, self.p))

    def __pow__(self, e: int) -> "ModularPolynomial":
        out = ModularPolynomial(self.p, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def monic(self) -> "ModularPolynomial":
        if not self.coeffs:
            return self
        inv = pow(self.lc, -1, self.p)
        return self * inv

    def divmod(self, den: "ModularPolynomial") -> tuple["ModularPolynomial", "ModularPolynomial"]:
        q, r = _divmod(list(self.coeffs), list(den.coeffs), self.p)
        return ModularPolynomial(self.p, q), ModularPolynomial(self.p, r)

    def __mod__(self, den: "ModularPolynomial") -> "ModularPolynomial":
        return self.divmod(den)[1]

    def __floordiv__(self, den: "ModularPolynomial") -> "ModularPolynomial":
        return self.divmod(den)[0]

    def derivative(self) -> "ModularPolynomial":
        return ModularPolynomial(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.p
        return acc


def _mul(a, b, p) -> list[int]:
    if not a or not b:
        return []
    if len(a) > 8 and len(b) > 8 and _fits_numpy(p, min(len(a), len(b))):
        return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)).__mod__(p).tolist()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [v % p for v in out]


def _divmod(num: list[int], den: list[int], p: int):
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    dd = len(den) - 1
    inv = pow(den[-1], -1, p)
    num = [v % p for v in num]
    if len(num) - 1 < dd:
        return [], _trim(num)
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q = c * inv % p
            quot[k - dd] = q
            for j in range(dd + 1):
                num[k - dd + j] = (num[k - dd + j] - q * den[j]) % p
    return quot, _trim(num[:dd])


def poly_gcd(a: ModularPolynomial, b: ModularPolynomial) -> ModularPolynomial:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _fits_numpy(p: int, length: int) -> bool:
    return (p - 1) ** 2 * (length + 1) < 2 ** 62


class _FrobeniusContext:
    """Computes h -> h^p mod f for a fixed monic f over F_p.

    Small fields use the Berlekamp matrix (rows x^{p i} mod f) with numpy;
    otherwise square-and-multiply in pure Python.
    """

    def __init__(self, f: ModularPolynomial):
        self.f = f
        self.p = f.p
        self.d = f.degree
        d, p = self.d, self.p
        self.use_numpy = d >= 2 and _fits_numpy(p, 2 * d)
        if self.use_numpy:
            fc = np.asarray(f.coeffs, dtype=np.int64)
            # rows: x^{d+j} mod f, for reducing products of degree < 2d - 1
            red = np.zeros((max(d - 1, 1), d), dtype=np.int64)
            cur = np.zeros(d, dtype=np.int64)
            cur[:] = (-fc[:d]) % p  # x^d mod f
            for j in range(d - 1):
                red[j] = cur
                top = cur[-1]
                nxt = np.empty(d, dtype=np.int64)
                nxt[0] = 0
                nxt[1:] = cur[:-1]
                cur = (nxt - top * fc[:d]) % p
            self.reduce_matrix = red
            xp = self._powmod_x(p)
            Q = np.zeros((d, d), dtype=np.int64)
            row = np.zeros(d, dtype=np.int64)
            row[0] = 1
            for i in range(d):
                Q[i] = row
                row = self._mulmod(row, xp)
            self.matrix = Q

    def _reduce(self, prod: np.ndarray) -> np.ndarray:
        d = self.d
        out = np.zeros(d, dtype=np.int64)
        low = prod[:d]
        out[:low.size] = low
        high = prod[d:]
        if high.size:
            out = (out + high @ self.reduce_matrix[:high.size]) % self.p
        return out % self.p

    def _mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._reduce(np.convolve(a, b) % self.p)

    def _powmod_x(self, e: int) -> np.ndarray:
        base = np.zeros(self.d, dtype=np.int64)
        if self.d > 1:
            base[1] = 1
        else:
            base = self._reduce(np.array([0, 1], dtype=np.int64))
        result = np.zeros(self.d, dtype=np.int64)
        result[0] = 1
        while e:
            if e & 1:
                result = self._mulmod(result, base)
            e >>= 1
            if e:
                base = self._mulmod(base, base)
        return result

    def frobenius(self, h: ModularPolynomial) -> ModularPolynomial:
        if self.use_numpy:
            vec = np.zeros(self.d, dtype=np.int64)
            vec[:len(h.coeffs)] = h.coeffs
            return ModularPolynomial(self.p, (vec @ self.matrix % self.p).tolist())
        return powmod(h, self.p, self.f)

    def x_power_chain(self, count: int) -> list[ModularPolynomial]:
        """[x^{p^1}, ..., x^{p^count}] mod f."""
        x = ModularPolynomial(self.p, [0, 1]) % self.f
        out = []
        cur = x
        for _ in range(count):
            cur = self.frobenius(cur)
            out.append(cur)
        return out


def powmod(base: ModularPolynomial, e: int, f: ModularPolynomial) -> ModularPolynomial:
    result = ModularPolynomial(base.p, [1]) % f
    b = base % f
    while e:
        if e & 1:
            result = (result * b) % f
        e >>= 1
        if e:
            b = (b * b) % f
    return result


def reduce_mod(p: int, poly: IntegerPolynomial) -> ModularPolynomial:
    """Coefficientwise reduction of an integer polynomial."""
    if not isinstance(poly, IntegerPolynomial):
        raise TypeError("evaluate bivariate inputs to a univariate polynomial first")
    return ModularPolynomial(p, poly.coeffs)


def rabin_irreducible(f: ModularPolynomial) -> bool:
    """Rabin's test: f | x^{p^d} - x and gcd(f, x^{p^{d/q}} - x) = 1 for primes q | d."""
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    f = f.monic()
    d = f.degree
    if d == 1:
        return True
    ctx = _FrobeniusContext(f)
    chain = ctx.x_power_chain(d)
    x = ModularPolynomial(f.p, [0, 1])
    if not ((chain[d - 1] - x) % f).is_zero():
        return False
    for q in prime_factors(d):
        h = chain[d // q - 1] - x
        if poly_gcd(f, h).degree != 0:
            return False
    return True


@dataclass(frozen=True)
class DegreePattern:
    p: int
    entries: dict = field(default_factory=dict)
    squarefree: bool = True

    def degrees(self) -> list[int]:
        """Factor degrees as a multiset (sorted list)."""
        return sorted(d for d, count in self.entries.items() for _ in range(count))


def factor_degree_pattern(f: ModularPolynomial) -> DegreePattern:
    """Distinct-degree factorisation; non-squarefree inputs are reported, not split."""
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    f = f.monic()
    if poly_gcd(f, f.derivative()).degree != 0:
        return DegreePattern(f.p, {}, False)
    ctx = _FrobeniusContext(f)
    x = ModularPolynomial(f.p, [0, 1])
    rest = f
    entries: dict[int, int] = {}
    h = x % f
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = ctx.frobenius(h)
        g = poly_gcd(rest, (h - x) % rest)
        if g.degree > 0:
            entries[d] = g.degree // d
            rest = rest // g
    if rest.degree > 0:
        entries[rest.degree] = entries.get(rest.degree, 0) + 1
    return DegreePattern(f.p, entries, True)


@dataclass
class SieveVerdict:
    status: str
    primes_used: list[int]
    surviving_degrees: set[int]


def _subset_sums(degrees: list[int], total: int) -> set[int]:
    reach = [False] * (total + 1)
    reach[0] = True
    for d in degrees:
        for s in range(total, d - 1, -1):
            if reach[s - d]:
                reach[s] = True
    return {s for s, ok in enumerate(reach) if ok}


def degree_sieve(f: IntegerPolynomial, degree_constraint: int, prime_budget: int) -> SieveVerdict:
    """Certify irreducibility over Q from factor-degree patterns modulo primes.

    Candidate degrees of a rational factor start as the multiples of
    ``degree_constraint`` and are intersected with the subset sums of each
    squarefree reduction's factor degrees, over the first ``prime_budget``
    primes.  Only ever answers Irreducible or Inconclusive.
    """
    deg = f.degree
    if abs(f.lc) != 1:
        raise ValueError("f must be monic")
    if degree_constraint < 1 or deg % degree_constraint:
        raise ValueError("degree_constraint must divide deg f")
    surviving = set(range(0, deg + 1, degree_constraint))
    used = []
    for p in first_primes(prime_budget):
        fp = reduce_mod(p, f)
        pattern = factor_degree_pattern(fp)
        if not pattern.squarefree:
            continue
        used.append(p)
        surviving &= _subset_sums(pattern.degrees(), deg)
        if surviving == {0, deg}:
            return SieveVerdict("Irreducible", used, surviving)
    status = "Irreducible" if surviving == {0, deg} else "Inconclusive"
    return SieveVerdict(status, used, surviving)


def _irreducible_primes(args) -> list[int]:
    delta, primes = args
    return [p for p in primes if rabin_irreducible(reduce_mod(p, delta))]


def table1_scan(m: int, k: int, pmax: int, cache: DeltaCache | None = None,
                workers: int = 1) -> list[int]:
    """Primes p < pmax for which Δ̃_{mk,m}(C) is irreducible over F_p."""
    from .dynatomic import delta_factor_tilde

    if k < 2:
        raise ValueError("k must be at least 2")
    delta = delta_factor_tilde(m * k, m, cache)
    primes = primes_below(pmax)
    if workers <= 1 or len(primes) < 2 * workers:
        return _irreducible_primes((delta, primes))
    from concurrent.futures import ProcessPoolExecutor

    chunks = [primes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        found = pool.map(_irreducible_primes, [(delta, c) for c in chunks])
    return sorted(p for part in found for p in part)


def large_delta_factor(m: int, k: int, cache: DeltaCache | None = None) -> IntegerPolynomial:
    """Δ̃_{mk,m}; for m = 3 through Res_t(Γ_k, t^2 + 7 + C)."""
    from .dynatomic import delta_factor_tilde, gamma_resultant

    if m == 3:
        return gamma_resultant(k)
    return delta_factor_tilde(m * k, m, cache)


def congruence_check(m: int, k: int, p: int, e: int, cache: DeltaCache | None = None) -> bool:
    """Δ̃_{m k p^e, m} ≡ Δ̃_{mk, m}^{φ(p^e)} (mod p), coefficientwise."""
    from .dynatomic import delta_factor_tilde

    if k < 2 or e < 1:
        raise ValueError("need k >= 2 and e >= 1")
    if k % p == 0:
        raise PInvalidDividesK(f"p={p} divides k={k}")
    big = large_delta_factor(m, k * p ** e, cache)
    small = delta_factor_tilde(m * k, m, cache)
    lhs = reduce_mod(p, big)
    rhs = reduce_mod(p, small) ** euler_phi(p ** e)
    return lhs == rhs


def congruence_record(m: int, k: int, p: int, e: int, cache: DeltaCache | None = None) -> dict:
    return {"m": m, "k": k, "p": p, "e": e, "ok": congruence_check(m, k, p, e, cache)}
