"""JSON and text forms shared by every module.

JSON: ``{"vars": ["x", "C"], "terms": [[i, j, "<decimal>"], ...]}`` sorted by
exponents descending; univariate polynomials use one exponent per term.
"""

from __future__ import annotations

import hashlib
import json

from .bivariate import BivariatePolynomial
from .univariate import IntegerPolynomial


def to_json_obj(poly) -> dict:
    if isinstance(poly, IntegerPolynomial):
        terms = [[i, str(c)] for i, c in reversed(list(enumerate(poly.coeffs))) if c]
        return {"vars": [poly.var], "terms": terms}
    if isinstance(poly, BivariatePolynomial):
        return {"vars": list(poly.vars), "terms": [[i, j, str(c)] for i, j, c in poly.sorted_terms()]}
    raise TypeError(f"cannot serialize {type(poly).__name__}")


def from_json_obj(obj: dict):
    vars = obj["vars"]
    if len(vars) == 1:
        terms = {int(i): int(c) for i, c in obj["terms"]}
        top = max(terms, default=-1)
        return IntegerPolynomial([terms.get(i, 0) for i in range(top + 1)], vars[0])
    if len(vars) == 2:
        return BivariatePolynomial({(int(i), int(j)): int(c) for i, j, c in obj["terms"]}, tuple(vars))
    raise ValueError(f"unsupported variable list {vars!r}")


def dumps(poly) -> str:
    return json.dumps(to_json_obj(poly), separators=(",", ":"))


def loads(text: str):
    return from_json_obj(json.loads(text))


def digest(poly) -> str:
    return hashlib.sha256(dumps(poly).encode()).hexdigest()


def _monomial(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(poly) -> str:
    """Canonical one-line rendering, e.g. ``x^2 - 2*x*C - 16*x + C^3 + 64``."""
    if isinstance(poly, IntegerPolynomial):
        names = [poly.var]
        terms = [((i,), c) for i, c in reversed(list(enumerate(poly.coeffs))) if c]
    else:
        names = list(poly.vars)
        terms = [((i, j), c) for i, j, c in poly.sorted_terms()]
    if not terms:
        return "0"
    out = []
    for n, (exps, c) in enumerate(terms):
        mono = _monomial(names, exps)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if n == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(out)
