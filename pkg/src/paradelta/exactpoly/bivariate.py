"""Sparse polynomials in two named variables over the integers."""

from __future__ import annotations

from typing import Iterable, Mapping

from ..errors import NotDivisible, VariableMismatch
from .univariate import IntegerPolynomial, mul_coeffs


class BivariatePolynomial:
    """Polynomial ``sum c[i, j] * v1**i * v2**j`` with integer coefficients.

    ``terms`` never stores zero coefficients.  The first variable is the one
    the canonical ordering (and most row-wise algorithms) treat as outer.
    """

    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = (), vars=("x", "c")):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int], int] = {}
        for (i, j), c in items:
            c = int(c)
            if c:
                key = (int(i), int(j))
                clean[key] = clean.get(key, 0) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean
        self.vars = tuple(vars)
        if len(self.vars) != 2 or self.vars[0] == self.vars[1]:
            raise ValueError(f"need two distinct variable names, got {vars!r}")

    # -- constructors --------------------------------------------------
    @classmethod
    def var(cls, name: str, vars=("x", "c")) -> "BivariatePolynomial":
        vars = tuple(vars)
        if name == vars[0]:
            return cls({(1, 0): 1}, vars)
        if name == vars[1]:
            return cls({(0, 1): 1}, vars)
        raise VariableMismatch(f"{name!r} not in {vars!r}")

    @classmethod
    def constant(cls, value: int, vars=("x", "c")) -> "BivariatePolynomial":
        return cls({(0, 0): value}, vars)

    @classmethod
    def from_univariate(cls, poly: IntegerPolynomial, vars=("x", "c")) -> "BivariatePolynomial":
        vars = tuple(vars)
        if poly.degree <= 0 or poly.var == vars[0]:
            return cls({(i, 0): c for i, c in enumerate(poly.coeffs)}, vars)
        if poly.var == vars[1]:
            return cls({(0, j): c for j, c in enumerate(poly.coeffs)}, vars)
        raise VariableMismatch(f"{poly.var!r} not in {vars!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[IntegerPolynomial], main_var: str, vars) -> "BivariatePolynomial":
        """Build from coefficients (polynomials in the other variable) of ``main_var**i``."""
        vars = tuple(vars)
        outer = vars.index(main_var)
        terms = {}
        for i, row in enumerate(rows):
            for j, c in enumerate(row.coeffs):
                if c:
                    terms[(i, j) if outer == 0 else (j, i)] = c
        return cls(terms, vars)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise VariableMismatch(f"{name!r} not in {self.vars!r}") from None

    def degree(self, name: str) -> int:
        """Degree in ``name``; -1 for the zero polynomial."""
        k = self._index(name)
        return max((key[k] for key in self.terms), default=-1)

    def other_var(self, name: str) -> str:
        return self.vars[1 - self._index(name)]

    def rows(self, main_var: str) -> list[IntegerPolynomial]:
        """Coefficients of ``main_var**i`` as polynomials in the other variable."""
        k = self._index(main_var)
        other = self.vars[1 - k]
        deg = self.degree(main_var)
        buckets: list[dict[int, int]] = [dict() for _ in range(deg + 1)]
        for key, c in self.terms.items():
            buckets[key[k]][key[1 - k]] = c
        out = []
        for b in buckets:
            top = max(b, default=-1)
            coeffs = [0] * (top + 1)
            for j, c in b.items():
                coeffs[j] = c
            out.append(IntegerPolynomial(coeffs, other))
        return out

    def leading_coeff(self, main_var: str) -> IntegerPolynomial:
        rows = self.rows(main_var)
        return rows[-1] if rows else IntegerPolynomial([], self.other_var(main_var))

    def is_monic_in(self, main_var: str) -> bool:
        return self.leading_coeff(main_var) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        if other.vars == self.vars:
            return self.terms == other.terms
        if other.vars == self.vars[::-1]:
            return self.terms == {(j, i): c for (i, j), c in other.terms.items()}
        return self.terms == other.terms and all(i == 0 and j == 0 for i, j in self.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.sorted_terms()!r}, vars={self.vars!r})"

    def __str__(self) -> str:
        from .serialize import to_text

        return to_text(self)

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return sorted(((i, j, c) for (i, j), c in self.terms.items()), reverse=True)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "BivariatePolynomial":
        if isinstance(other, BivariatePolynomial):
            if other.vars == self.vars:
                return other
            if other.vars == self.vars[::-1]:
                return other.reorder(self.vars)
            if all(i == 0 and j == 0 for i, j in other.terms):
                return BivariatePolynomial(other.terms, self.vars)
            raise VariableMismatch(f"{self.vars!r} vs {other.vars!r}")
        if isinstance(other, int):
            return BivariatePolynomial.constant(other, self.vars)
        if isinstance(other, IntegerPolynomial):
            return BivariatePolynomial.from_univariate(other, self.vars)
        raise TypeError(f"cannot combine BivariatePolynomial with {type(other).__name__}")

    def reorder(self, vars) -> "BivariatePolynomial":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        if vars == self.vars[::-1]:
            return BivariatePolynomial({(j, i): c for (i, j), c in self.terms.items()}, vars)
        raise VariableMismatch(f"cannot reorder {self.vars!r} as {vars!r}")

    def rename(self, old: str, new: str) -> "BivariatePolynomial":
        vars = tuple(new if v == old else v for v in self.vars)
        return BivariatePolynomial(self.terms, vars)

    def __add__(self, other) -> "BivariatePolynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BivariatePolynomial(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "BivariatePolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BivariatePolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, int):
            return BivariatePolynomial({k: c * other for k, c in self.terms.items()}, self.vars)
        other = self._coerce(other)
        if len(self.terms) * len(other.terms) > 2000:
            return self._mul_rows(other)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePolynomial(out, self.vars)

    __rmul__ = __mul__

    def _mul_rows(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        # Kronecker substitution in the second variable turns each row
        # product into a single big-integer polynomial product.
        main = self.vars[0]
        a = self.rows(main)
        b = other.rows(main)
        width = max((r.degree for r in a), default=0) + max((r.degree for r in b), default=0) + 1
        pa = [0] * (len(a) * width)
        for i, r in enumerate(a):
            pa[i * width:i * width + len(r.coeffs)] = r.coeffs
        pb = [0] * (len(b) * width)
        for i, r in enumerate(b):
            pb[i * width:i * width + len(r.coeffs)] = r.coeffs
        prod = mul_coeffs(pa, pb)
        terms = {}
        for idx, c in enumerate(prod):
            if c:
                terms[divmod(idx, width)] = c
        return BivariatePolynomial(terms, self.vars)

    def __pow__(self, exponent: int) -> "BivariatePolynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = BivariatePolynomial.constant(1, self.vars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- evaluation / substitution ------------------------------------
    def __call__(self, v1, v2):
        total = 0
        for (i, j), c in self.terms.items():
            total += c * v1 ** i * v2 ** j
        return total

    def eval_mod(self, v1: int, v2: int, p: int) -> int:
        total = 0
        for (i, j), c in self.terms.items():
            total += c * pow(v1, i, p) * pow(v2, j, p)
        return total % p

    def evaluate(self, name: str, value: int) -> IntegerPolynomial:
        """Substitute an integer for ``name``; result is univariate in the other variable."""
        k = self._index(name)
        other = self.vars[1 - k]
        coeffs: dict[int, int] = {}
        for key, c in self.terms.items():
            e = key[1 - k]
            coeffs[e] = coeffs.get(e, 0) + c * value ** key[k]
        top = max(coeffs, default=-1)
        return IntegerPolynomial([coeffs.get(e, 0) for e in range(top + 1)], other)

    def substitute(self, values: Mapping[str, IntegerPolynomial]) -> IntegerPolynomial:
        """Replace both variables by univariate polynomials in a common variable."""
        p1 = values[self.vars[0]]
        p2 = values[self.vars[1]]
        var = p1.var if p1.degree > 0 else p2.var
        p1 = p1.with_var(var)
        p2 = p2.with_var(var)
        rows = self.rows(self.vars[0])
        acc = IntegerPolynomial([], var)
        for row in reversed(rows):
            acc = acc * p1 + row.with_var(var).compose(p2)
        return acc

    def derivative(self, name: str) -> "BivariatePolynomial":
        k = self._index(name)
        out = {}
        for key, c in self.terms.items():
            e = key[k]
            if e:
                nk = (e - 1, key[1]) if k == 0 else (key[0], e - 1)
                out[nk] = c * e
        return BivariatePolynomial(out, self.vars)

    def divmod_main(self, den: "BivariatePolynomial", main_var: str):
        """Long division in ``main_var`` with coefficients in the other variable's ring.

        Each step divides by the leading coefficient of ``den`` exactly;
        raises NotDivisible when that is impossible.
        """
        den = self._coerce(den)
        num_rows = self.rows(main_var)
        den_rows = den.rows(main_var)
        if not den_rows:
            raise ZeroDivisionError("division by zero polynomial")
        other = self.other_var(main_var)
        dd = len(den_rows) - 1
        lc = den_rows[-1]
        rem = list(num_rows)
        if len(rem) - 1 < dd:
            return BivariatePolynomial({}, self.vars), self
        quot = [IntegerPolynomial([], other)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            q = c.exact_div(lc) if not lc == 1 else c
            quot[k - dd] = q
            for j, d in enumerate(den_rows):
                if not d.is_zero():
                    rem[k - dd + j] = rem[k - dd + j] - q * d
        return (BivariatePolynomial.from_rows(quot, main_var, self.vars),
                BivariatePolynomial.from_rows(rem, main_var, self.vars))


def lift(poly, vars) -> BivariatePolynomial:
    """View an int / univariate / bivariate value as a bivariate polynomial in ``vars``."""
    if isinstance(poly, BivariatePolynomial):
        return BivariatePolynomial.constant(0, vars) + poly if poly.vars != tuple(vars) else poly
    if isinstance(poly, IntegerPolynomial):
        return BivariatePolynomial.from_univariate(poly, vars)
    return BivariatePolynomial.constant(int(poly), vars)


def poly_rows_product(a: list[IntegerPolynomial], b: list[IntegerPolynomial]) -> list[IntegerPolynomial]:
    """Multiply polynomials given as row lists (coefficients in an inner ring)."""
    if not a or not b:
        return []
    var = a[0].var
    out = [IntegerPolynomial([], var) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


__all__ = ["BivariatePolynomial", "lift", "poly_rows_product", "mul_coeffs", "NotDivisible"]
