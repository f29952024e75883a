"""Dense univariate polynomials over the integers."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import NotDivisible, VariableMismatch

# Above this many coefficient products, pack both operands into single
# big integers (Kronecker substitution) and let CPython multiply those.
_KRONECKER_THRESHOLD = 400


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _pack(coeffs: Sequence[int], slot_bits: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = (value << slot_bits) + c
    return value


def _unpack(value: int, slot_bits: int, length: int) -> list[int]:
    """Inverse of ``_pack`` for signed coefficients below 2**(slot_bits-1)."""
    nbytes = slot_bits // 8
    total = nbytes * (length + 1)
    raw = (value % (1 << (8 * total))).to_bytes(total, "little")
    half = 1 << (slot_bits - 1)
    full = 1 << slot_bits
    out = []
    carry = 0
    for i in range(length):
        digit = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if digit >= half:
            digit -= full
            carry = 1
        else:
            carry = 0
        out.append(digit)
    return out


def mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of two coefficient lists (index = exponent)."""
    if not a or not b:
        return []
    if len(a) * len(b) <= _KRONECKER_THRESHOLD:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    bound = max(abs(c) for c in a).bit_length() + max(abs(c) for c in b).bit_length()
    bound += min(len(a), len(b)).bit_length() + 2
    slot = (bound + 7) // 8 * 8
    prod = _pack(a, slot) * _pack(b, slot)
    return _unpack(prod, slot, len(a) + len(b) - 1)


class IntegerPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``. Instances are immutable
    and always trimmed, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[int] = (), var: str = "x"):
        self.coeffs = tuple(_trim([int(c) for c in coeffs]))
        self.var = var

    @classmethod
    def constant(cls, value: int, var: str = "x") -> "IntegerPolynomial":
        return cls([value], var)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1, var: str = "x") -> "IntegerPolynomial":
        return cls([0] * degree + [coeff], var)

    @classmethod
    def from_roots(cls, roots: Iterable[int], var: str = "x") -> "IntegerPolynomial":
        out = cls([1], var)
        for r in roots:
            out = out * cls([-r, 1], var)
        return out

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == tuple(_trim([other]))
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # constants compare equal regardless of the variable tag
        return self.var == other.var or len(self.coeffs) <= 1

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        from .serialize import to_text

        return to_text(self)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "IntegerPolynomial":
        if isinstance(other, IntegerPolynomial):
            if other.var != self.var and len(other.coeffs) > 1 and len(self.coeffs) > 1:
                raise VariableMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, int):
            return IntegerPolynomial([other], self.var)
        raise TypeError(f"cannot combine IntegerPolynomial with {type(other).__name__}")

    def _var_with(self, other: "IntegerPolynomial") -> str:
        return self.var if len(self.coeffs) > 1 or len(other.coeffs) <= 1 else other.var

    def __add__(self, other) -> "IntegerPolynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntegerPolynomial((self[i] + other[i] for i in range(n)), self._var_with(other))

    __radd__ = __add__

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial((-c for c in self.coeffs), self.var)

    def __sub__(self, other) -> "IntegerPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntegerPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial((c * other for c in self.coeffs), self.var)
        other = self._coerce(other)
        return IntegerPolynomial(mul_coeffs(self.coeffs, other.coeffs), self._var_with(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntegerPolynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = IntegerPolynomial([1], self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __call__(self, value):
        """Horner evaluation; works for ints, floats, complex and polynomials."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_mod(self, value: int, p: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % p
        return acc

    def divmod_exact_lc(self, den: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """Long division over Z; every leading-term step must divide exactly."""
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = den.degree
        lc = den.lc
        if len(rem) - 1 < dd:
            return IntegerPolynomial([], self.var), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q, r = divmod(c, lc)
            if r:
                raise NotDivisible(f"leading coefficient {lc} does not divide {c}")
            quot[k - dd] = q
            for j, d in enumerate(den.coeffs):
                rem[k - dd + j] -= q * d
        return IntegerPolynomial(quot, self.var), IntegerPolynomial(rem, self.var)

    def exact_div(self, den) -> "IntegerPolynomial":
        if isinstance(den, int):
            if den == 0:
                raise ZeroDivisionError("division by zero")
            out = []
            for c in self.coeffs:
                q, r = divmod(c, den)
                if r:
                    raise NotDivisible(f"{den} does not divide coefficient {c}")
                out.append(q)
            return IntegerPolynomial(out, self.var)
        try:
            q, r = self.divmod_exact_lc(den)
        except NotDivisible as exc:
            raise NotDivisible(f"{self} is not divisible by {den}") from exc
        if not r.is_zero():
            raise NotDivisible(f"{self} is not divisible by {den}")
        return q

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def compose(self, inner: "IntegerPolynomial") -> "IntegerPolynomial":
        """Return ``self(inner)``; the result carries the inner variable."""
        acc = IntegerPolynomial([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return IntegerPolynomial(acc.coeffs, inner.var)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def with_var(self, var: str) -> "IntegerPolynomial":
        return IntegerPolynomial(self.coeffs, var)

    def reverse_signs_if_negative(self) -> "IntegerPolynomial":
        return -self if self.lc < 0 else self


def gcd_over_q(a: IntegerPolynomial, b: IntegerPolynomial) -> IntegerPolynomial:
    """Primitive gcd of two integer polynomials (positive leading coefficient).

    Pseudo-remainder sequence with content removal at every step; adequate for
    the separability checks done here, not tuned for large degrees.
    """
    a = _primitive(a)
    b = _primitive(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    return a.reverse_signs_if_negative()


def _primitive(p: IntegerPolynomial) -> IntegerPolynomial:
    g = p.content()
    return p.exact_div(g) if g > 1 else p


def _pseudo_rem(a: IntegerPolynomial, b: IntegerPolynomial) -> IntegerPolynomial:
    rem = list(a.coeffs)
    db = b.degree
    lc = b.lc
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        rem = [lc * v for v in rem]
        for j, d in enumerate(b.coeffs):
            rem[k - db + j] -= c * d
        rem.pop()
    return IntegerPolynomial(rem, a.var)
