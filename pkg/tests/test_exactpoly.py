import random

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from paradelta.errors import (
    DegreeBoundViolated,
    InconsistentResidues,
    NonIntegralInterpolant,
    NotAPerfectPower,
    NotDivisible,
    NotIn4cRing,
    VariableMismatch,
)
from paradelta.exactpoly import (
    BivariatePolynomial,
    IntegerPolynomial,
    PrimeResidueSystem,
    compose,
    crt_reconstruct,
    derivative,
    dumps,
    exact_divide,
    interpolate_integer,
    loads,
    nth_root,
    rebase_4c,
    resultant_in_var,
    resultant_in_z,
    resultant_mod_p,
    resultant_univariate,
    ring_ops,
    symmetric_abscissas,
    to_text,
)
from paradelta.exactpoly.crt import is_prime, word_primes
from paradelta.exactpoly.univariate import mul_coeffs

ZC = ("z", "c")
XC = ("x", "c")
XCT = ("x", "C")


def P(coeffs, var="x"):
    return IntegerPolynomial(coeffs, var)


def B(terms, vars=XC):
    return BivariatePolynomial(terms, vars)


z = BivariatePolynomial.var("z", ZC)
c = BivariatePolynomial.var("c", ZC)
x_xc = BivariatePolynomial.var("x", XC)
c_xc = BivariatePolynomial.var("c", XC)


small_coeffs = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


class TestRingOps:
    def test_difference_of_squares(self):
        assert ring_ops(P([1, 1]), P([-1, 1]), "mul") == P([-1, 0, 1])

    def test_second_iterate_factorisation(self):
        lhs = ring_ops(z * z - z + c, z * z + z + c + 1, "mul")
        assert lhs == z ** 4 + 2 * c * z * z - z + c * c + c

    def test_zero_power(self):
        assert ring_ops(P([-1, 1]), 0, "pow") == P([1])

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatch):
            ring_ops(B({(1, 0): 1}, XC), B({(1, 0): 1}, ("y", "c")), "add")

    @given(small_coeffs, small_coeffs)
    def test_degree_additivity(self, a, b):
        pa, pb = P(a), P(b)
        if not pa.is_zero() and not pb.is_zero():
            assert (pa * pb).degree == pa.degree + pb.degree

    @given(st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=40),
           st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=40))
    @settings(max_examples=40)
    def test_kronecker_matches_schoolbook(self, a, b):
        expected = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                expected[i + j] += u * v
        assert mul_coeffs(a, b) == expected


class TestExactDivide:
    def test_dynatomic_division(self):
        num = z ** 4 + 2 * c * z * z - z + c * c + c
        assert exact_divide(num, z * z - z + c, "z") == z * z + z + c + 1

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            exact_divide(P([0, 0, 1]), P([1, 1]))

    def test_simple(self):
        assert exact_divide(P([-1, 0, 1]), P([-1, 1])) == P([1, 1])

    @given(small_coeffs, small_coeffs)
    def test_roundtrip(self, a, b):
        q = P(b)
        if q.is_zero():
            return
        assert exact_divide(ring_ops(P(a), q, "mul"), q) == P(a)


class TestDerivativeCompose:
    @pytest.mark.parametrize("poly, var, expected", [
        (z ** 3 + c * z, "z", 3 * z * z + c),
        (z * z + c, "z", 2 * z),
        (P([81, 18, 8, 1], "C"), "C", P([18, 16, 3], "C")),
    ])
    def test_derivative(self, poly, var, expected):
        assert derivative(poly, var) == expected

    def test_derivative_unknown_var(self):
        with pytest.raises(VariableMismatch):
            derivative(P([1, 2, 3], "C"), "x")

    def test_phi2_of_g(self):
        g = P([1, 7, -1, 1], "t")
        assert compose(P([1, 1], "y"), g) == P([2, 7, -1, 1], "t")

    def test_square_of_shift(self):
        assert compose(P([0, 0, 1]), P([1, 1], "t")) == P([1, 2, 1], "t")

    def test_constant_outer(self):
        assert compose(P([5]), P([3, 0, 2], "t")) == 5

    @given(small_coeffs, small_coeffs, st.integers(-5, 5))
    def test_compose_evaluates(self, a, b, t):
        assert compose(P(a), P(b, "t"))(t) == P(a)(P(b, "t")(t))


class TestInterpolation:
    def test_square_plus_one(self):
        assert interpolate_integer([(0, 1), (1, 2), (2, 5)], "t") == P([1, 0, 1], "t")

    def test_zero(self):
        assert interpolate_integer([(0, 0), (1, 0), (2, 0)]).is_zero()

    def test_non_integral(self):
        with pytest.raises(NonIntegralInterpolant):
            interpolate_integer([(0, 1), (2, 2)])

    def test_symmetric_abscissas(self):
        assert symmetric_abscissas(5) == [0, 1, -1, 2, -2]

    @given(small_coeffs)
    def test_recovers_polynomial(self, coeffs):
        p = P(coeffs)
        xs = symmetric_abscissas(len(coeffs))
        assert interpolate_integer([(x, p(x)) for x in xs]) == p


class TestCRT:
    @pytest.mark.parametrize("residues, expected", [((2, 3), 17), ((4, 6), -1), ((0, 0), 0)])
    def test_examples(self, residues, expected):
        assert crt_reconstruct(PrimeResidueSystem([5, 7], list(residues))) == expected

    def test_count_mismatch(self):
        with pytest.raises(InconsistentResidues):
            crt_reconstruct(PrimeResidueSystem([5, 7], [1]))

    def test_distinct_primes(self):
        with pytest.raises(InconsistentResidues):
            PrimeResidueSystem([5, 5], [1, 1])

    @given(st.integers(-(10 ** 20), 10 ** 20))
    def test_inverse_of_reduction(self, n):
        primes = [p for _, p in zip(range(3), word_primes())]
        system = PrimeResidueSystem(primes, [n % p for p in primes])
        assert crt_reconstruct(system) == n

    def test_word_primes_are_prime_and_descending(self):
        ps = [p for _, p in zip(range(5), word_primes())]
        assert all(is_prime(p) and p < 2 ** 31 for p in ps)
        assert ps == sorted(ps, reverse=True)


class TestUnivariateResultant:
    @pytest.mark.parametrize("a, b, expected", [
        (P([-3, 1]), P([-5, 1]), -2),
        (P([1, 1, 1]), P([-2, 1]), 7),
        (P([1, 0, 1]), P([1, 0, 1]), 0),
    ])
    def test_examples(self, a, b, expected):
        assert resultant_univariate(a, b) == expected

    @given(small_coeffs, small_coeffs)
    def test_against_sympy(self, a, b):
        pa, pb = P(a), P(b)
        if pa.is_zero() or pb.is_zero():
            return
        if pa.degree == 0 and pb.degree == 0:
            return
        t = sympy.Symbol("x")
        ea = sum(v * t ** i for i, v in enumerate(pa.coeffs))
        eb = sum(v * t ** i for i, v in enumerate(pb.coeffs))
        assert resultant_univariate(pa, pb) == int(sylvester(ea, eb, t).det())

    @given(small_coeffs, small_coeffs)
    def test_antisymmetry(self, a, b):
        pa, pb = P(a), P(b)
        if pa.is_zero() or pb.is_zero():
            return
        sign = (-1) ** (pa.degree * pb.degree)
        assert resultant_univariate(pa, pb) == sign * resultant_univariate(pb, pa)

    @given(small_coeffs, small_coeffs, small_coeffs)
    @settings(max_examples=50)
    def test_multiplicativity(self, a, b, d):
        pa, pb, pd = P(a), P(b), P(d)
        if pa.is_zero() or pb.is_zero() or pd.is_zero():
            return
        assert resultant_univariate(pa, pb * pd) == resultant_univariate(pa, pb) * resultant_univariate(pa, pd)

    @given(small_coeffs, small_coeffs)
    def test_modular_agrees(self, a, b):
        pa, pb = P(a), P(b)
        if pa.is_zero() or pb.is_zero():
            return
        p = 1_000_003
        assert resultant_mod_p(list(pa.coeffs), list(pb.coeffs), p) == resultant_univariate(pa, pb) % p


class TestResultantInZ:
    def test_period_one_multiplier(self):
        a = z * z - z + c
        b = {0: x_xc, 1: B({(0, 0): -2})}
        assert resultant_in_z(a, b, (2, 1)) == x_xc * x_xc - 2 * x_xc + 4 * c_xc

    def test_substitution(self):
        a = z - c
        b = {0: x_xc, 2: B({(0, 0): -1})}
        assert resultant_in_z(a, b, (1, 2)) == x_xc - c_xc * c_xc

    def test_common_factor(self):
        a = z * z + 1
        assert resultant_in_z(a, a, (0, 0)).is_zero()

    def test_bound_too_small(self):
        a = z - c
        b = {0: x_xc, 2: B({(0, 0): -1})}
        with pytest.raises(DegreeBoundViolated):
            resultant_in_z(a, b, (1, 1))

    @pytest.mark.parametrize("seed", range(6))
    def test_against_sympy(self, seed):
        rng = random.Random(seed)
        X, Cs, Z = sympy.symbols("x c z")

        def random_z_poly(dz):
            rows = {}
            expr = 0
            for k in range(dz + 1):
                terms = {(i, j): rng.randint(-3, 3) for i in range(2) for j in range(3)}
                if k == dz:
                    terms[(0, 0)] = 1
                    terms = {(0, 0): 1}
                rows[k] = B(terms)
                expr += sum(v * X ** i * Cs ** j for (i, j), v in terms.items()) * Z ** k
            return rows, expr

        ra, ea = random_z_poly(rng.randint(2, 5))
        rb, eb = random_z_poly(rng.randint(1, 4))
        expected = sympy.Poly(sylvester(ea, eb, Z).det(), X, Cs)
        got = resultant_in_z(ra, rb, (expected.degree(X), expected.degree(Cs)))
        terms = {monom: int(v) for monom, v in expected.terms()}
        assert got == B(terms)

    def test_resultant_in_var(self):
        # Res_x(x^2 + x + 1, x^2 - 2x + C) = C^2 + C + 7
        delta1 = B({(2, 0): 1, (1, 0): -2, (0, 1): 1}, XCT)
        assert resultant_in_var(P([1, 1, 1]), delta1, "x", "C") == P([7, 1, 1], "C")


class TestRootsAndRebase:
    def test_square_root(self):
        base = B({(1, 0): 1, (0, 1): -1, (0, 0): -4}, XCT)
        assert nth_root(base ** 2, 2, "x") == base

    def test_cube_root(self):
        base = B({(2, 0): 1, (1, 0): -2, (0, 1): 1}, XCT)
        assert nth_root(base ** 3, 3, "x") == base

    def test_not_a_power(self):
        with pytest.raises(NotAPerfectPower):
            nth_root(B({(2, 0): 1, (0, 0): 1}, XCT), 2, "x")

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(-4, 4)), max_size=5),
           st.sampled_from([2, 3, 6]))
    @settings(max_examples=30, deadline=None)
    def test_root_of_power(self, extra, n):
        terms = {(3, 0): 1}
        for j, v in extra:
            terms[(j % 3, j)] = v
        base = B(terms, XCT)
        assert nth_root(base ** n, n, "x") == base

    @pytest.mark.parametrize("src, expected", [
        ({(2, 0): 1, (1, 0): -2, (0, 1): 4}, {(2, 0): 1, (1, 0): -2, (0, 1): 1}),
        ({(1, 0): 1, (0, 1): -4, (0, 0): -4}, {(1, 0): 1, (0, 1): -1, (0, 0): -4}),
    ])
    def test_rebase(self, src, expected):
        assert rebase_4c(B(src)) == B(expected, XCT)

    def test_rebase_rejects(self):
        with pytest.raises(NotIn4cRing):
            rebase_4c(B({(1, 0): 1, (0, 1): -2}))


class TestSerialization:
    def test_json_shape(self):
        poly = B({(1, 0): 1, (0, 1): -1, (0, 0): -4}, XCT)
        assert dumps(poly) == '{"vars":["x","C"],"terms":[[1,0,"1"],[0,1,"-1"],[0,0,"-4"]]}'

    def test_text(self):
        poly = B({(2, 0): 1, (1, 1): -2, (1, 0): -16, (0, 3): 1, (0, 2): 8, (0, 1): 16, (0, 0): 64}, XCT)
        assert to_text(poly) == "x^2 - 2*x*C - 16*x + C^3 + 8*C^2 + 16*C + 64"

    @given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                           st.integers(-(10 ** 40), 10 ** 40)))
    def test_roundtrip(self, terms):
        poly = B(terms, XCT)
        assert loads(dumps(poly)) == poly

    def test_univariate_roundtrip(self):
        poly = P([81, 18, 8, 1], "C")
        assert loads(dumps(poly)) == poly


class TestBatchedResultant:
    @pytest.mark.parametrize("seed", range(4))
    def test_matches_scalar(self, seed):
        import numpy as np

        from paradelta.exactpoly.modres import batched_resultant_mod_p

        rng = np.random.default_rng(seed)
        p = 2_147_483_629
        # small coefficients make abnormal remainder sequences frequent
        a = rng.integers(-2, 3, size=(300, 7))
        b = rng.integers(-2, 3, size=(300, 5))
        a[:150, -1] = 1
        got = batched_resultant_mod_p(a, b, p)
        expected = [resultant_mod_p(list(r), list(s), p) for r, s in zip(a.tolist(), b.tolist())]
        assert got.tolist() == expected
