"""Function-style entry points over the polynomial types."""

from __future__ import annotations

from ..errors import NotAPerfectPower, NotDivisible, NotIn4cRing, VariableMismatch
from .bivariate import BivariatePolynomial
from .univariate import IntegerPolynomial


def ring_ops(a, b, op: str):
    """``op`` in {add, sub, mul, pow}; for pow, ``b`` is the integer exponent."""
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("pow exponent must be a non-negative integer")
        return a ** b
    if isinstance(a, BivariatePolynomial) and isinstance(b, BivariatePolynomial):
        if set(a.vars) != set(b.vars):
            raise VariableMismatch(f"{a.vars!r} vs {b.vars!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def exact_divide(num, den, main_var: str | None = None):
    """Quotient q with q * den == num; NotDivisible otherwise."""
    if isinstance(num, IntegerPolynomial) and isinstance(den, (IntegerPolynomial, int)):
        return num.exact_div(den)
    if not isinstance(num, BivariatePolynomial):
        raise TypeError("numerator must be a polynomial")
    if main_var is None:
        main_var = num.vars[0]
    q, r = num.divmod_main(den, main_var)
    if not r.is_zero():
        raise NotDivisible(f"remainder {r} is nonzero")
    return q


def derivative(p, var: str):
    if isinstance(p, IntegerPolynomial):
        if p.degree > 0 and var != p.var:
            raise VariableMismatch(f"{var!r} is not {p.var!r}")
        return p.derivative()
    return p.derivative(var)


def compose(outer: IntegerPolynomial, inner: IntegerPolynomial) -> IntegerPolynomial:
    return outer.compose(inner)


def _root_rows(rows: list[IntegerPolynomial], n: int) -> list[IntegerPolynomial]:
    """n-th root of a monic polynomial given by coefficient rows (low to high).

    Reverse the polynomial to a power series P(y) = 1 + P1 y + ... and use the
    power recurrence  k Q_k = sum_{j=1..k} ((1/n + 1) j - k) P_j Q_{k-j},
    scaled by n so that all arithmetic stays in the integer ring.
    """
    D = len(rows) - 1
    if D % n:
        raise NotAPerfectPower(f"degree {D} is not divisible by {n}")
    d = D // n
    P = rows[::-1]
    var = rows[0].var
    Q = [IntegerPolynomial([1], var)]
    for k in range(1, d + 1):
        acc = IntegerPolynomial([], var)
        for j in range(1, k + 1):
            w = (n + 1) * j - n * k
            if w and not P[j].is_zero() and not Q[k - j].is_zero():
                acc = acc + P[j] * Q[k - j] * w
        try:
            Q.append(acc.exact_div(n * k))
        except NotDivisible:
            raise NotAPerfectPower(f"coefficient {k} of the root is not integral") from None
    return Q[::-1]


def nth_root(p: BivariatePolynomial, n: int, main_var: str) -> BivariatePolynomial:
    """Monic r (in ``main_var``) with r**n == p exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(p, IntegerPolynomial):
        p = BivariatePolynomial.from_univariate(p, (p.var, "_"))
        return nth_root(p, n, main_var)
    rows = p.rows(main_var)
    if not rows or not rows[-1] == 1:
        raise NotAPerfectPower("input must be monic in the main variable")
    if n == 1:
        return p
    root = BivariatePolynomial.from_rows(_root_rows(rows, n), main_var, p.vars)
    if root ** n != p:
        raise NotAPerfectPower(f"not a perfect {n}-th power")
    return root


def rebase_4c(p: BivariatePolynomial, c: str = "c", new: str = "C") -> BivariatePolynomial:
    """Rewrite p(x, c) as a polynomial in C = 4c; every c**j term must carry 4**j."""
    k = p._index(c)
    terms = {}
    for key, coef in p.terms.items():
        j = key[k]
        q, r = divmod(coef, 4 ** j)
        if r:
            raise NotIn4cRing(f"coefficient {coef} of {c}^{j} is not divisible by 4^{j}")
        terms[key] = q
    vars = tuple(new if v == c else v for v in p.vars)
    return BivariatePolynomial(terms, vars)
