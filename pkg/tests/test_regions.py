import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from paradelta.cyclotomic import euler_phi
from paradelta.errors import RootOnPath
from paradelta.regions import (
    S1,
    S2,
    S3,
    S4,
    ComplexSample,
    classify_point,
    crit_T,
    crit_Y,
    eval_G1,
    eval_G2,
    exact_parabolic_parameters,
    figure_row_count,
    g,
    mandelbrot_grid,
    mandelbrot_membership,
    match_error,
    omega1,
    omega2,
    omega3,
    paper_constants_check,
    parabolic_parameters_period3,
    primitive_unit_roots,
    region_census,
    sampled_positivity,
    solve_g_equals,
    totally_real_enumerate,
    winding_integrals,
    winding_number,
)

SQ = 3 * math.sqrt(3)


@pytest.mark.parametrize("k, expected", [
    (1, [1]),
    (4, [1j, -1j]),
    (6, [cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3)]),
])
def test_primitive_roots(k, expected):
    got = [s.value for s in primitive_unit_roots(k)]
    assert len(got) == len(expected)
    for e in expected:
        assert min(abs(v - e) for v in got) < 1e-15


def test_primitive_roots_high_precision():
    roots = primitive_unit_roots(7, 200)
    assert len(roots) == 6 and all(r.residual < 1e-40 for r in roots)


def test_solve_at_one():
    roots = [s.value for s in solve_g_equals(1)]
    expected = [0, complex(0.5, -SQ / 2), complex(0.5, SQ / 2)]
    for got, want in zip(roots, expected):
        assert abs(got - want) < 1e-14
    assert abs(abs(roots[2]) - math.sqrt(7)) < 1e-14 and abs(roots[2]) < S2


@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False))
@settings(max_examples=200)
def test_solver_vieta_and_residual(z0):
    roots = solve_g_equals(z0)
    assert abs(sum(r.value for r in roots) - 1) < 1e-9
    assert all(r.converged for r in roots)
    keys = [(r.value.real, r.value.imag) for r in roots]
    assert keys == sorted(keys)


def test_solver_escalated_precision():
    roots = solve_g_equals(cmath.exp(0.3j), 128)
    assert all(r.residual < 1e-12 and r.precision_bits >= 128 for r in roots)


@pytest.mark.parametrize("t, expected", [
    (0, "A"),
    (complex(0.5, SQ / 2), "B"),
    (1, "Neither"),
])
def test_classify(t, expected):
    assert classify_point(ComplexSample(t)) == expected


@given(st.floats(0, 2 * math.pi))
def test_roots_on_unit_circle_are_classified(theta):
    for r in solve_g_equals(cmath.exp(1j * theta)):
        assert abs(abs(g(r.value)) - 1) < 1e-9
        assert classify_point(r) != "Neither"


@pytest.mark.parametrize("k", range(2, 51))
def test_census(k):
    c = region_census(k)
    phi = euler_phi(k)
    assert (c.count_A, c.count_B) == (phi, 2 * phi)
    assert c.max_abs_A < S1 and -S1 <= c.min_re_A and c.max_re_A < 0
    assert c.max_abs_B < S2 and S3 - 1e-9 <= c.min_re_B and c.max_re_B <= S4 + 1e-9
    assert c.boundary_hits == 0


@pytest.mark.parametrize("r, T, expected", [(1, 0, 39)])
def test_G1_value(r, T, expected):
    assert eval_G1(r, T) == expected


@given(st.floats(0.01, 5), st.floats(0, 2 * math.pi))
def test_G1_definition(r, theta):
    lhs = abs(g(r * cmath.exp(1j * theta))) ** 2
    assert lhs == pytest.approx(eval_G1(r, math.cos(theta)) + 1, rel=1e-9, abs=1e-9)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_G2_definition(x, y):
    lhs = abs(g(complex(x, y))) ** 2
    assert lhs == pytest.approx(eval_G2(x, y * y) + 1, rel=1e-9, abs=1e-9)


def test_critical_points():
    assert crit_T(S1) is None
    tm, tp = crit_T(S2)
    assert tm < 0 < tp < 1
    assert crit_Y(S3)[1] > 0 and crit_Y(S4)[1] > 0


def test_sampled_positivity():
    assert all(v > 0 for v in sampled_positivity().values())


def test_contours_closed():
    for contour in (omega1(S1, 0.05), omega2(S2, 0.05), omega3(10)):
        pts = contour.samples
        assert abs(pts[0] - pts[-1]) < 1e-12


@pytest.mark.parametrize("i", range(16))
def test_winding(i):
    z0 = cmath.exp(2j * math.pi * i / 16)
    assert winding_integrals(z0) == {"I1": 1, "I2": 2, "I3": 0, "I4": 0, "I5": 2}


def test_winding_single_examples():
    assert winding_number(omega1(0.275, 0.05), 1) == 1
    assert winding_number(omega2(2.75, 0.05), 1) == 2
    assert winding_number(omega1(10, 0.05), 1) == 1


def test_root_on_path():
    # t = ε is on Ω1(r, ε); choose z0 = g(ε)
    with pytest.raises(RootOnPath):
        winding_number(omega1(1, 0.05), g(0.05))


def test_totally_real():
    report = totally_real_enumerate(5)
    assert report[1].qualifying == [(1, -1), (1, 0), (1, 1)]
    assert (1, 0, -2) not in report[2].qualifying
    assert set().union(*(r.roots for r in report.values())) == {-1, 0, 1}
    # exactly the products (t - 1)^a t^b (t + 1)^c
    assert [len(report[d].qualifying) for d in range(1, 6)] == [3, 6, 10, 15, 21]


def test_parabolic_parameters():
    pts = parabolic_parameters_period3(2)
    assert pts[0] == (1, complex(-1.75, 0))
    k2 = [c for k, c in pts if k == 2]
    assert len(k2) == 3
    real = [c for c in k2 if abs(c.imag) < 1e-12]
    assert len(real) == 1 and abs(real[0].real - (-1.76852915246768)) < 1e-12
    assert len(parabolic_parameters_period3(20)) == figure_row_count(20) == 1 + sum(
        3 * euler_phi(k) for k in range(2, 21))


@pytest.mark.parametrize("k", range(1, 11))
def test_parabolic_match_exact(k, cache):
    numeric = [c for kk, c in parabolic_parameters_period3(k) if kk == k]
    assert match_error(numeric, exact_parabolic_parameters(k, cache=cache)) < 1e-8


@pytest.mark.parametrize("c, inside", [(0, True), (1, False), (-2, True), (0.25, True), (-0.75 + 0.2j, False)])
def test_mandelbrot(c, inside):
    assert mandelbrot_membership(c)[0] is inside


def test_mandelbrot_grid_agrees_with_scalar():
    rows = list(mandelbrot_grid((-2, 0.5), (-1, 1), 0.25, max_iter=100))
    for re, im, iters, inside in rows:
        assert mandelbrot_membership(complex(re, im), 100) == (inside, iters)


def test_constants():
    checks = {c.name: c for c in paper_constants_check()}
    for name in ("G1(s1,-1)", "|g|^2(s2,T+(s2))", "G2(s3,0)", "G2(s3,Y+(s3))", "G2(s4,0)",
                 "G2(s4,Y+(s4))", "-log10(s1*s2)", "height-bound", "schinzel-bound"):
        assert checks[name].ok, name
    # the minimum of G1 itself is 0.2027..., one less than the printed value
    assert checks["G1(s2,T+(s2))"].value == pytest.approx(0.20275036290003, abs=1e-12)
