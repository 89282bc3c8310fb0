from fractions import Fraction

import pytest

from flipsym.algebra import (
    Q, U1, W, Z, AlgebraError, LogExtendedFunction, NonIsolatedSingularityError,
    NotIntegrableAtInfinity, Polynomial, RationalFunction, UnsupportedLogError,
    laurent_expand, pole_order, primitive_from_infinity, residue_at,
    residue_by_differentiation, residue_with_logs, rf_const, rf_sum, rf_var,
    substitute_mobius,
)
from flipsym.curve import MobiusMap

z, u, q, w = rf_var(Z), rf_var(U1), rf_var(Q), rf_var(W)


class TestCanonicalForm:
    def test_gcd_cancelled(self):
        f = (z * z - 1) / (z - 1)
        assert f == z + 1
        assert f.den.is_one()

    def test_integer_content_and_sign(self):
        f = (2 * z + 2) / (-4 * z)
        g = (z + 1) / (-2 * z)
        assert f == g
        assert str(f.num) == str(g.num) and str(f.den) == str(g.den)
        assert int(f.den.leading_coefficient()) > 0

    def test_rational_coefficients(self):
        f = rf_const(Fraction(1, 3)) * z + Fraction(1, 2)
        assert f == (2 * z + 3) / 6

    def test_zero(self):
        assert (z - z).is_zero()
        assert ((z + 1) / (z - 1) - (z + 1) / (z - 1)) == RationalFunction.const(0)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            z / (u - u)

    def test_rf_sum(self):
        items = [1 / (z - i) for i in range(1, 5)]
        total = items[0] + items[1] + items[2] + items[3]
        assert rf_sum(items) == total

    def test_evaluate(self):
        f = (z * z + u) / (z - 2 * u)
        assert f.evaluate({Z: 3, U1: 1}) == pytest.approx(10.0)


class TestDifferentiate:
    def test_simple(self):
        assert (1 / (u - q)).diff(U1) == -1 / (u - q) ** 2

    def test_constant(self):
        assert (q * q + 3).diff(U1).is_zero()

    def test_quotient(self):
        # reference: sympy factor(diff((u^2+3u)/(u-1), u)) = (u-3)(u+1)/(u-1)^2
        f = (u * u + 3 * u) / (u - 1)
        assert f.diff(U1) == (u * u - 2 * u - 3) / (u - 1) ** 2


class TestSubstitution:
    def test_rename_swaps(self):
        f = z / (u * u + 1)
        assert f.rename({Z: U1, U1: Z}) == u / (z * z + 1)

    def test_substitute_rational(self):
        f = 1 / (z - u)
        assert f.substitute(Z, 1 / q) == q / (1 - u * q)

    def test_mobius_examples(self):
        neg = MobiusMap(1, 0, 0)
        assert substitute_mobius(z * z, Z, neg) == z * z
        assert substitute_mobius(1 / (w - z) ** 2, Z, neg) == 1 / (w + z) ** 2

    @pytest.mark.parametrize("abc", [(1, 0, 0), (1, 3, 2), (-1, 5, 0), (Fraction(2, 3), 1, -1)])
    def test_involution_twice(self, abc):
        m = MobiusMap(*abc)
        assert substitute_mobius(substitute_mobius(z, Z, m), Z, m) == z


class TestResidue:
    def test_simple_pole(self):
        assert residue_at(1 / (q - 3), Q, 3) == rf_const(1)

    def test_double_pole_derivative_formula(self):
        c, d = Fraction(2), Fraction(-1, 3)
        f = 1 / ((q - c) ** 2 * (q - d))
        assert residue_at(f, Q, c) == rf_const(-1 / (c - d) ** 2)

    def test_moving_point(self):
        iu = -u  # iota u for iota = -z
        f = 1 / ((q - iu) * (q - z))
        assert residue_at(f, Q, iu) == 1 / (iu - z)

    def test_regular_point(self):
        assert residue_at(1 / (q - 1), Q, 2).is_zero()

    def test_scaled_denominator(self):
        # Res_{q=1/2} 1/((2q-1)^2 q) = -4 * Res of 1/((q-1/2)^2 q) / 4 = -1
        f = 1 / ((2 * q - 1) ** 2 * q)
        assert residue_at(f, Q, Fraction(1, 2)) == rf_const(-1)

    def test_point_depending_on_variable(self):
        with pytest.raises(AlgebraError):
            residue_at(1 / (q - u), Q, q + 1)
        with pytest.raises(AlgebraError):
            laurent_expand(1 / (q - u), Q, 2 * q, 2)

    def test_non_isolated_is_an_algebra_error(self):
        assert issubclass(NonIsolatedSingularityError, AlgebraError)

    def test_matches_differentiation(self):
        f = (q * q + u) / ((q - u) ** 3 * (q + 2 * u) * (q - z))
        for p in (u, -2 * u, z):
            assert residue_at(f, Q, p) == residue_by_differentiation(f, Q, p)

    def test_pole_order(self):
        assert pole_order(1 / (q - u) ** 3, Q, u) == 3
        assert pole_order(q / (q - 1), Q, 0) == 0


class TestLaurent:
    def test_simple(self):
        s = laurent_expand(1 / (q - u), Q, u, 1)
        assert s.coeffs == {-1: rf_const(1)}

    def test_geometric(self):
        s = laurent_expand(1 / (q * (q - 1)), Q, 0, 1)
        assert {n: s.coefficient(n) for n in (-1, 0, 1)} == {n: rf_const(-1) for n in (-1, 0, 1)}
        assert s.min_order == -1

    def test_regular(self):
        s = laurent_expand((q + 1) / (q - 5), Q, 0, 3)
        assert s.min_order >= 0

    def test_principal_part(self):
        f = (q * q + 1) / ((q - 1) ** 2 * (q + 1))
        pp = laurent_expand(f, Q, 1, -1).principal_part()
        # principal part of f at 1: 1/(q-1)^2 + 1/(2 (q-1))
        assert pp == 1 / (q - 1) ** 2 + rf_const(Fraction(1, 2)) / (q - 1)


class TestPrimitive:
    def test_double_pole(self):
        F = primitive_from_infinity(1 / (u - q) ** 2, U1)
        assert F.is_rational() and F.rational == -1 / (u - q)

    def test_not_integrable_at_infinity(self):
        with pytest.raises(NotIntegrableAtInfinity):
            primitive_from_infinity(u / (u - 2), U1)

    def test_simple_pole_log(self):
        F = primitive_from_infinity(1 / (u - 2) - 1 / (u + 1), U1)
        assert F.rational.is_zero()
        assert F.logs == {u - 2: rf_const(1), u + 1: rf_const(-1)}

    def test_two_logs(self):
        a, b = Fraction(1), Fraction(-3)
        f = 1 / ((u - a) * (u - b))
        F = primitive_from_infinity(f, U1)
        assert F.rational.is_zero()
        assert F.logs == {u - a: rf_const(1 / (a - b)), u - b: rf_const(-1 / (a - b))}
        assert F.differentiate(U1).to_rational() == f

    def test_nonlinear_factor(self):
        f = u / (u * u + 1) ** 2
        F = primitive_from_infinity(f, U1)
        assert F.differentiate(U1).to_rational() == f
        assert F.rational == -1 / (2 * (u * u + 1))

    def test_arctan_not_supported(self):
        with pytest.raises(UnsupportedLogError):
            primitive_from_infinity(1 / (u * u + 1) ** 2, U1)

    def test_multivariate(self):
        f = 1 / (u - q) ** 2 - 1 / (u + q) ** 2
        F = primitive_from_infinity(f, U1)
        assert F.rational == -1 / (u - q) + 1 / (u + q)

    def test_residue_with_logs(self):
        # Res_{q=0} log(q - u) / q^2 = d/dq log(q-u) at 0 = -1/u
        F = LogExtendedFunction(logs={q - u: rf_const(1)})
        res = residue_with_logs(1 / q ** 2, F, Q, 0)
        assert res.is_rational() and res.rational == -1 / u

    def test_residue_with_logs_keeps_log(self):
        F = LogExtendedFunction(rf_const(2), {q - u: rf_const(1)})
        res = residue_with_logs(1 / (q - z), F, Q, z)
        assert res.rational == rf_const(2)
        assert res.logs == {z - u: rf_const(1)}


class TestPolynomial:
    def test_evaluate(self):
        p = Polynomial.var(0) * Polynomial.var(1) + 3
        assert p.evaluate({0: 2, 1: Fraction(1, 2)}) == 4

    def test_terms_are_ints(self):
        p = (Polynomial.var(0) + 1) * (Polynomial.var(0) + 1)
        assert sorted(p.terms()) == [((0,) * 16, 1), ((1,) + (0,) * 15, 2), ((2,) + (0,) * 15, 1)]

    def test_zero(self):
        assert (Polynomial.var(2) - Polynomial.var(2)).is_zero()
