"""Numerical side: roots of Γ_k through the cubics g(t) = ζ, the A/B region
census, the G1/G2 inequalities, winding numbers, the totally-real oracle and
the Figure 1 data (period-3 parabolic parameters and a Mandelbrot backdrop).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Iterator

import mpmath
import numpy as np

from .cyclotomic import euler_phi
from .errors import ConvergenceFailure, PathTooCoarse, RootOnPath

S1, S2, S3, S4 = 0.275, 2.75, 0.495, 0.64
R_LARGE = 10.0
EPS_SMALL = 0.05
Y0 = 10.0

RESIDUAL_TOL = 1e-12
REGION_TOL = 1e-8
ROOT_ON_PATH_TOL = 1e-12

# g(t) = t^3 - t^2 + 7t + 1, coefficients from the leading one down
G_COEFFS = (1.0, -1.0, 7.0, 1.0)


def g(t):
    return ((t - 1) * t + 7) * t + 1


def g_prime(t):
    return (3 * t - 2) * t + 7


@dataclass(frozen=True)
class ComplexSample:
    value: complex
    precision_bits: int = 53
    residual: float = 0.0

    @property
    def converged(self) -> bool:
        return self.residual < RESIDUAL_TOL


def primitive_unit_roots(k: int, precision_bits: int = 53) -> list[ComplexSample]:
    """e^{2πij/k} for gcd(j, k) = 1, in increasing j."""
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for j in range(1, k + 1):
        if gcd(j, k) != 1:
            continue
        if precision_bits > 53:
            with mpmath.workprec(precision_bits):
                z = mpmath.expjpi(mpmath.mpf(2 * j) / k)
                res = float(abs(z ** k - 1))
            out.append(ComplexSample(complex(z), precision_bits, res))
        else:
            z = cmath.exp(2j * math.pi * j / k)
            out.append(ComplexSample(z, 53, abs(z ** k - 1)))
    return out


def _durand_kerner(coeffs: list, one, iters: int = 500) -> list:
    """Simultaneous iteration for a monic polynomial (coefficients leading first)."""
    n = len(coeffs) - 1
    radius = 1 + max(abs(c) for c in coeffs[1:])
    seed = [radius * cmath.exp(1j * (2 * math.pi * i / n + 0.4)) for i in range(n)]
    roots = [one * z for z in seed]

    def p(x):
        acc = one * 0
        for c in coeffs:
            acc = acc * x + c
        return acc

    for _ in range(iters):
        delta = 0
        new = []
        for i, r in enumerate(roots):
            den = one
            for j, s in enumerate(roots):
                if i != j:
                    den = den * (r - s)
            step = p(r) / den
            new.append(r - step)
            delta = max(delta, abs(step))
        roots = new
        if delta < 1e-15 * radius:
            break
    return roots


def _polish(t, z0, steps: int = 6):
    for _ in range(steps):
        d = g_prime(t)
        if d == 0:
            break
        step = (g(t) - z0) / d
        t = t - step
        if abs(step) == 0:
            break
    return t


def _solve_cubic(z0, one) -> list:
    coeffs = [one * c for c in G_COEFFS]
    coeffs[-1] = coeffs[-1] - z0
    return [_polish(r, z0) for r in _durand_kerner(coeffs, one)]


def solve_g_equals(z0: complex, precision_bits: int = 53) -> list[ComplexSample]:
    """The three roots of g(t) = z0, ordered by (Re, Im).

    Hardware floats first; if any residual misses the target the solve is
    repeated in mpmath at twice the working precision.
    """
    attempts = [precision_bits] if precision_bits > 53 else [53]
    attempts.append(max(2 * attempts[0], 106))
    for bits in attempts:
        if bits == 53:
            z = complex(z0)
            roots = _solve_cubic(z, 1 + 0j)
            res = [abs(g(t) - z) for t in roots]
            values = roots
        else:
            with mpmath.workprec(bits):
                z = mpmath.mpc(z0)
                roots = _solve_cubic(z, mpmath.mpc(1))
                res = [float(abs(g(t) - z)) for t in roots]
                values = [complex(t) for t in roots]
        if max(res) < RESIDUAL_TOL:
            samples = [ComplexSample(v, bits, r) for v, r in zip(values, res)]
            return sorted(samples, key=lambda s: (s.value.real, s.value.imag))
    raise ConvergenceFailure(f"cubic g(t) = {z0} not solved to {RESIDUAL_TOL} (residual {max(res):.3g})")


def classify_point(t) -> str:
    """'A' / 'B' on the curve |g| = 1 (left / right half-plane), else 'Neither'."""
    value = t.value if isinstance(t, ComplexSample) else complex(t)
    if abs(abs(g(value)) - 1) > REGION_TOL:
        return "Neither"
    return "A" if value.real <= 0 else "B"


@dataclass
class RegionCensus:
    k: int
    count_A: int = 0
    count_B: int = 0
    max_abs_A: float = 0.0
    max_abs_B: float = 0.0
    min_re_B: float = math.inf
    max_re_B: float = -math.inf
    max_re_A: float = -math.inf
    min_re_A: float = math.inf
    max_residual: float = 0.0
    boundary_hits: int = 0

    def add(self, t: ComplexSample, region: str) -> None:
        v = t.value
        self.max_residual = max(self.max_residual, t.residual)
        if v.real == 0:
            self.boundary_hits += 1
        if region == "A":
            self.count_A += 1
            self.max_abs_A = max(self.max_abs_A, abs(v))
            self.max_re_A = max(self.max_re_A, v.real)
            self.min_re_A = min(self.min_re_A, v.real)
        else:
            self.count_B += 1
            self.max_abs_B = max(self.max_abs_B, abs(v))
            self.max_re_B = max(self.max_re_B, v.real)
            self.min_re_B = min(self.min_re_B, v.real)


@dataclass(frozen=True)
class RootRecord:
    k: int
    j: int
    t: ComplexSample
    region: str

    @property
    def c(self) -> complex:
        return (-self.t.value ** 2 - 7) / 4


def gamma_roots(k: int, precision_bits: int = 53) -> list[RootRecord]:
    """All 3φ(k) roots of Γ_k, labelled by the primitive root index j and region."""
    if k < 2:
        raise ValueError("k must be at least 2")
    out = []
    for j in range(1, k + 1):
        if gcd(j, k) != 1:
            continue
        zeta = cmath.exp(2j * math.pi * j / k)
        for t in solve_g_equals(zeta, precision_bits):
            out.append(RootRecord(k, j, t, classify_point(t)))
    return out


def region_census(k: int, precision_bits: int = 53) -> RegionCensus:
    census = RegionCensus(k)
    records = gamma_roots(k, precision_bits)
    for j, group in itertools.groupby(records, key=lambda r: r.j):
        regions = sorted(r.region for r in group)
        if regions != ["A", "B", "B"]:
            raise ConvergenceFailure(f"k={k}, j={j}: expected one root in A and two in B, got {regions}")
    for r in records:
        census.add(r.t, r.region)
    return census


def eval_G1(r: float, T: float) -> float:
    return (8 * r ** 3 * T ** 3 + (28 * r ** 4 - 4 * r ** 2) * T ** 2
            + (-2 * r ** 5 - 20 * r ** 3 + 14 * r) * T + (r ** 6 - 13 * r ** 4 + 51 * r ** 2))


def eval_G2(x: float, Y: float) -> float:
    return (Y ** 3 + (3 * x ** 2 - 2 * x - 13) * Y ** 2
            + (3 * x ** 4 - 4 * x ** 3 + 2 * x ** 2 - 20 * x + 51) * Y
            + (x ** 6 - 2 * x ** 5 + 15 * x ** 4 - 12 * x ** 3 + 47 * x ** 2 + 14 * x))


def crit_T(r: float) -> tuple[float, float] | None:
    """(T-, T+) for G1(r, ·), or None when the critical points are not real."""
    if r <= 0:
        raise ValueError("r must be positive")
    rad = 52 * r ** 4 + 16 * r ** 2 - 20
    if rad < 0:
        return None
    s = math.sqrt(rad)
    return (-7 * r ** 2 + 1 - s) / (6 * r), (-7 * r ** 2 + 1 + s) / (6 * r)


def crit_Y(x: float) -> tuple[float, float] | None:
    rad = -80 * x ** 2 + 112 * x + 16
    if rad < 0:
        return None
    s = math.sqrt(rad)
    base = -3 * x ** 2 + 2 * x + 13
    return (base - s) / 3, (base + s) / 3


# -- contours ---------------------------------------------------------------

Segment = Callable[[float], complex]


def _arc(radius: float, start: float, stop: float) -> Segment:
    return lambda s: radius * cmath.exp(1j * (start + (stop - start) * s))


def _line(a: complex, b: complex) -> Segment:
    return lambda s: a + (b - a) * s


@dataclass(frozen=True)
class ContourSpec:
    """Closed piecewise path; ``point(s)`` for s in [0, 1] runs through it once."""

    shape: str
    params: tuple
    segments: tuple = field(repr=False, default=())
    base_samples: int = 64

    def point(self, s: float) -> complex:
        n = len(self.segments)
        if s >= 1:
            return self.segments[-1](1.0)
        i = min(int(s * n), n - 1)
        return self.segments[i](s * n - i)

    @property
    def samples(self) -> list[complex]:
        count = self.base_samples * len(self.segments)
        pts = [self.point(i / count) for i in range(count)]
        return pts + [pts[0]]


def omega1(r: float, eps: float) -> ContourSpec:
    """Left half-disc of radius r together with the small disc of radius eps."""
    segs = (_arc(r, math.pi / 2, 3 * math.pi / 2), _line(-1j * r, -1j * eps),
            _arc(eps, -math.pi / 2, math.pi / 2), _line(1j * eps, 1j * r))
    return ContourSpec("Omega1", (r, eps), segs)


def omega2(r: float, eps: float) -> ContourSpec:
    """Right half-disc of radius r with the small disc of radius eps removed."""
    segs = (_arc(r, -math.pi / 2, math.pi / 2), _line(1j * r, 1j * eps),
            _arc(eps, math.pi / 2, -math.pi / 2), _line(-1j * eps, -1j * r))
    return ContourSpec("Omega2", (r, eps), segs)


def omega3(y0: float) -> ContourSpec:
    """Rectangle [s3, s4] x [-y0, y0], counter-clockwise."""
    a, b, c, d = complex(S3, -y0), complex(S4, -y0), complex(S4, y0), complex(S3, y0)
    return ContourSpec("Omega3", (y0,), (_line(a, b), _line(b, c), _line(c, d), _line(d, a)))


def winding_number(contour: ContourSpec, z0: complex, max_depth: int = 30) -> int:
    """Winding number of g(z) - z0 around 0 as z traverses the contour."""

    def value(s: float) -> complex:
        w = g(contour.point(s)) - z0
        if abs(w) < ROOT_ON_PATH_TOL:
            raise RootOnPath(f"g(z) - z0 vanishes near z={contour.point(s)}")
        return w

    def increment(s0: float, s1: float, w0: complex, w1: complex, depth: int) -> float:
        d = cmath.phase(w1 / w0)
        if abs(d) < math.pi / 2:
            return d
        if depth >= max_depth:
            raise PathTooCoarse(f"phase step {d:.3f} unresolved after {max_depth} bisections")
        sm = (s0 + s1) / 2
        wm = value(sm)
        return increment(s0, sm, w0, wm, depth + 1) + increment(sm, s1, wm, w1, depth + 1)

    count = contour.base_samples * len(contour.segments)
    grid = [i / count for i in range(count + 1)]
    vals = [value(s) for s in grid]
    total = sum(increment(grid[i], grid[i + 1], vals[i], vals[i + 1], 0) for i in range(count))
    raw = total / (2 * math.pi)
    nearest = round(raw)
    if abs(raw - nearest) > 0.1:
        raise PathTooCoarse(f"winding {raw:.4f} is not within 0.1 of an integer")
    return int(nearest)


def winding_integrals(z0: complex, r: float = R_LARGE, eps: float = EPS_SMALL,
                      y0: float = Y0) -> dict[str, int]:
    """Root counts of g - z0 in D1..D4 and in the strip s3 <= Re <= s4."""
    i1 = winding_number(omega1(S1, eps), z0)
    i2 = winding_number(omega2(S2, eps), z0)
    return {
        "I1": i1,
        "I2": i2,
        "I3": winding_number(omega1(r, eps), z0) - i1,
        "I4": winding_number(omega2(r, eps), z0) - i2,
        "I5": winding_number(omega3(y0), z0),
    }


# -- totally real oracle ----------------------------------------------------

_SQRT2 = math.sqrt(2)


def _sign_at_sqrt2(coeffs: list, negate: bool) -> int:
    """Exact sign of sum c_i (±√2)^i, coefficients low to high."""
    a = b = 0
    for i, c in enumerate(coeffs):
        half, odd = divmod(i, 2)
        term = c * 2 ** half
        if odd:
            b += -term if negate else term
        else:
            a += term
    if a >= 0 and b >= 0:
        return 1 if a or b else 0
    if a <= 0 and b <= 0:
        return -1
    lhs, rhs = a * a, 2 * b * b
    if lhs == rhs:
        return 0
    return (1 if a > 0 else -1) if lhs > rhs else (1 if b > 0 else -1)


def _derivative(c: list) -> list:
    return [i * c[i] for i in range(1, len(c))]


def _rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and any(a):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] -= q * v
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _rem(a, b)
    return [v / a[-1] for v in a]


def _sturm_count(c: list) -> int:
    """Distinct real roots in (-√2, √2) of c (Fractions, low to high); ±√2 must not be roots."""
    seq = [c, _derivative(c)]
    while len(seq[-1]) > 1:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-v for v in r])

    def changes(neg: bool) -> int:
        signs = [s for s in (_sign_at_sqrt2(p, neg) for p in seq) if s]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    return changes(True) - changes(False)


@dataclass
class TotallyRealReport:
    degree: int
    nodes: int
    qualifying: list[tuple[int, ...]]
    roots: set


def _inside(low_high: list) -> bool:
    """Every root real and strictly inside (-√2, √2); exact."""
    deg = len(low_high) - 1
    if _sign_at_sqrt2(low_high, False) * low_high[-1] <= 0:
        return False
    if _sign_at_sqrt2(low_high, True) * low_high[-1] * (-1) ** deg <= 0:
        return False
    sqfree = _squarefree([Fraction(v) for v in low_high])
    return _sturm_count(sqfree) == len(sqfree) - 1


def _derivative_ok(desc: list[int], d: int) -> bool:
    """Gauss-Lucas: the (d-j)-th derivative must itself be real-rooted inside the interval."""
    j = len(desc) - 1
    # p^{(d-j)} / (d-j)! has coefficients comb(d - i, d - j) * e_i on t^{j-i}
    return _inside([comb(d - i, d - j) * desc[i] for i in range(j, -1, -1)])


def _enumerate_degree(d: int) -> TotallyRealReport:
    bounds = [math.floor(comb(d, i) * 2 ** (i / 2) + 1e-9) for i in range(d + 1)]
    qualifying = []
    nodes = 0
    roots: set = set()

    def extend(desc: list[int]):
        nonlocal nodes
        nodes += 1
        if len(desc) == d + 1:
            qualifying.append(tuple(desc))
            roots.update(_real_roots(_squarefree([Fraction(v) for v in reversed(desc)])))
            return
        j = len(desc)
        for e in range(-bounds[j], bounds[j] + 1):
            nxt = desc + [e]
            if _derivative_ok(nxt, d):
                extend(nxt)

    extend([1])
    return TotallyRealReport(d, nodes, qualifying, roots)


def _squarefree(c: list) -> list:
    g_ = _gcd(c, _derivative(c))
    if len(g_) == 1:
        return c
    q = list(c)
    out = []
    # polynomial division c / g
    while len(q) >= len(g_):
        coef = q[-1] / g_[-1]
        out.append(coef)
        shift = len(q) - len(g_)
        for i, v in enumerate(g_):
            q[shift + i] -= coef * v
        q.pop()
    return list(reversed(out))


def _real_roots(c: list) -> set:
    """Integer roots exactly; anything left over is reported numerically."""
    found = set()
    rest = list(c)
    for r in (-1, 0, 1):
        while len(rest) > 1 and sum(v * r ** i for i, v in enumerate(rest)) == 0:
            found.add(r)
            rest = _deflate(rest, r)
    if len(rest) > 1:
        for z in np.roots([float(v) for v in reversed(rest)]):
            found.add(round(float(z.real), 12))
    return found


def _deflate(c: list, r: int) -> list:
    out = [Fraction(0)] * (len(c) - 1)
    acc = Fraction(0)
    for i in range(len(c) - 1, 0, -1):
        acc = acc * r + c[i]
        out[i - 1] = acc
    return out


def totally_real_enumerate(d_max: int) -> dict[int, TotallyRealReport]:
    """Monic integer polynomials of degree <= d_max with every root real in (-√2, √2)."""
    if not 1 <= d_max <= 6:
        raise ValueError("d_max must lie in 1..6")
    return {d: _enumerate_degree(d) for d in range(1, d_max + 1)}


# -- Figure 1 ---------------------------------------------------------------

def parabolic_parameters_period3(k_max: int, precision_bits: int = 53) -> list[tuple[int, complex]]:
    """(k, c) for the roots of Δ_{3k,3}, 1 <= k <= k_max, ordered by (k, j, Re t, Im t)."""
    if k_max < 1:
        raise ValueError("k_max must be positive")
    out: list[tuple[int, complex]] = [(1, complex(-1.75, 0.0))]
    for k in range(2, k_max + 1):
        out.extend((k, r.c) for r in gamma_roots(k, precision_bits))
    return out


def figure_row_count(k_max: int) -> int:
    return 1 + sum(3 * euler_phi(k) for k in range(2, k_max + 1))


def exact_parabolic_parameters(k: int, dps: int = 40, cache=None) -> list[complex]:
    """Roots c of Δ̃_{3k,3}(4c), from the exact pipeline, by mpmath.polyroots."""
    from .dynatomic import delta_factor_tilde

    poly = delta_factor_tilde(3 * k, 3, cache)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(poly.coeffs)), maxsteps=500, extraprec=4 * dps)
        return [complex(r) / 4 for r in roots]


def match_error(a: list[complex], b: list[complex]) -> float:
    """Largest distance under the optimal one-to-one matching of a and b."""
    from scipy.optimize import linear_sum_assignment

    if len(a) != len(b):
        return math.inf
    cost = np.abs(np.subtract.outer(np.asarray(a), np.asarray(b)))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(a) else 0.0


def mandelbrot_membership(c: complex, max_iter: int = 500, escape_radius: float = 2.0) -> tuple[bool, int]:
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    z = 0j
    for i in range(max_iter):
        z = z * z + c
        if abs(z) > escape_radius:
            return False, i + 1
    return True, max_iter


def mandelbrot_grid(re_range=(-2.25, 0.75), im_range=(-1.5, 1.5), step: float = 0.01,
                    max_iter: int = 500, escape_radius: float = 2.0) -> Iterator[tuple[float, float, int, bool]]:
    """Vectorised escape-time grid, rows ordered by Im then Re."""
    nre = int(round((re_range[1] - re_range[0]) / step)) + 1
    nim = int(round((im_range[1] - im_range[0]) / step)) + 1
    re = re_range[0] + step * np.arange(nre)
    im = im_range[0] + step * np.arange(nim)
    c = re[None, :] + 1j * im[:, None]
    z = np.zeros_like(c)
    iters = np.full(c.shape, max_iter, dtype=np.int64)
    alive = np.ones(c.shape, dtype=bool)
    for i in range(max_iter):
        z[alive] = z[alive] ** 2 + c[alive]
        escaped = alive & (np.abs(z) > escape_radius)
        iters[escaped] = i + 1
        alive &= ~escaped
        if not alive.any():
            break
    for a in range(nim):
        for b in range(nre):
            yield float(re[b]), float(im[a]), int(iters[a, b]), bool(alive[a, b])


# -- printed constants and sampled inequalities -----------------------------

@dataclass(frozen=True)
class ConstantCheck:
    name: str
    value: float
    printed: str

    @property
    def ok(self) -> bool:
        """The value, truncated to the printed number of decimals, reproduces them."""
        decimals = len(self.printed.split(".")[1])
        scale = 10 ** decimals
        return math.floor(self.value * scale + 1e-9) == round(float(self.printed) * scale)


def paper_constants_check() -> list[ConstantCheck]:
    t_plus = crit_T(S2)[1]
    y3 = crit_Y(S3)[1]
    y4 = crit_Y(S4)[1]
    log_term = -math.log10(S1 * S2)
    return [
        ConstantCheck("G1(s1,-1)", eval_G1(S1, -1), "0.04330"),
        ConstantCheck("G1(s2,T+(s2))", eval_G1(S2, t_plus), "1.2027"),
        # |g|^2 = G1 + 1 at the same point; this is the quantity the digits 1.2027 describe
        ConstantCheck("|g|^2(s2,T+(s2))", eval_G1(S2, t_plus) + 1, "1.2027"),
        ConstantCheck("G2(s3,0)", eval_G2(S3, 0), "17.8465"),
        ConstantCheck("G2(s3,Y+(s3))", eval_G2(S3, y3), "0.1065"),
        ConstantCheck("G2(s4,0)", eval_G2(S4, 0), "27.436"),
        ConstantCheck("G2(s4,Y+(s4))", eval_G2(S4, y4), "0.00023"),
        ConstantCheck("-log10(s1*s2)", log_term, "0.1213"),
        ConstantCheck("height-bound", (1 - log_term / 3) * math.log(2 * S4), "0.2368"),
        ConstantCheck("schinzel-bound", 0.5 * math.log((1 + math.sqrt(5)) / 2), "0.2406"),
    ]


def sampled_positivity(n: int = 1000, r_large: float = R_LARGE, eps: float = EPS_SMALL,
                       y_max: float = 100.0) -> dict[str, float]:
    """Minimum of G1 on S1..S5 and of G2 on S6, S7 over n-point grids."""
    T01 = np.linspace(0, 1, n)
    return {
        "S1": float(eval_G1(np.linspace(1e-3, r_large, n), 0.0).min()),
        "S2": float(eval_G1(r_large, np.linspace(-1, 1, n)).min()),
        "S3": float(eval_G1(S1, np.linspace(-1, 0, n)).min()),
        "S4": float(eval_G1(S2, T01).min()),
        "S5": float(eval_G1(eps, T01).min()),
        "S6": float(eval_G2(S3, np.linspace(0, y_max, n)).min()),
        "S7": float(eval_G2(S4, np.linspace(0, y_max, n)).min()),
    }
