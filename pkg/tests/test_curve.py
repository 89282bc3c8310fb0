from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flipsym.algebra import Q, T, Z, laurent_expand, rf_const, rf_var, substitute_mobius
from flipsym.curve import CurveError, MobiusMap, galois_involution, validate_curve, y_of

z, q, t = rf_var(Z), rf_var(Q), rf_var(T)


def series_poly(s):
    return sum((c * t ** k for k, c in s.coeffs.items()), rf_const(0))


class TestMobius:
    def test_degenerate(self):
        with pytest.raises(CurveError):
            MobiusMap(1, 1, -1)
        with pytest.raises(CurveError):
            MobiusMap(0, 0, 5)

    @given(*[st.fractions(-5, 5, max_denominator=6)] * 3)
    def test_involutive(self, a, b, c):
        if a * a + b * c == 0:
            return
        m = MobiusMap(a, b, c)
        assert m.apply(m.of(Z)) == z

    def test_numeric_apply(self):
        m = MobiusMap(1, 3, 2)
        assert m.apply(0) == -3
        assert m.apply(Fraction(1, 2)) is None
        assert m.infinity_image() == Fraction(1, 2)

    def test_derivative(self):
        m = MobiusMap(1, 3, 2)
        assert m.derivative(Z) == m.of(Z).diff(Z)


class TestValidate:
    def test_default(self, curve):
        assert [rp.beta for rp in curve.ramification_points] == [-1]
        assert curve.iota.apply(-1) == 1

    def test_fixed_ramification_point(self):
        with pytest.raises(CurveError, match="fixes ramification point beta=0"):
            validate_curve(z * z, MobiusMap(1, 0, 0))

    def test_non_simple(self):
        with pytest.raises(CurveError, match="non-simple"):
            validate_curve(z ** 3, MobiusMap(1, 5, 0))

    def test_irrational(self):
        with pytest.raises(CurveError, match="numeric"):
            validate_curve(z ** 3 - 2 * z, MobiusMap(-1, 5, 0))

    def test_permuted(self):
        # x' = 3z^2 - 3 has roots +-1, swapped by -z
        with pytest.raises(CurveError, match="permutes"):
            validate_curve(z ** 3 - 3 * z, MobiusMap(1, 0, 0))

    def test_maps_to_pole(self):
        # z + 1/z ramifies at +-1; iota z = -z - 1 sends -1 to the pole 0
        with pytest.raises(CurveError, match="pole"):
            validate_curve(z + 1 / z, MobiusMap(-1, -1, 0))

    def test_constant(self):
        with pytest.raises(CurveError):
            validate_curve(rf_const(3), MobiusMap(1, 0, 0))

    def test_extra_curves_valid(self, curves):
        for c in curves.values():
            assert c.ramification_points


class TestY:
    def test_default(self, curve):
        assert y_of(curve) == -z * z + 2 * z

    def test_shifted_iota(self):
        c = validate_curve(z * z, MobiusMap(1, 3, 0))
        assert y_of(c) == -substitute_mobius(z * z, Z, MobiusMap(1, 3, 0))

    def test_structural(self, curves):
        for c in curves.values():
            assert c.y == -substitute_mobius(c.x, Z, c.iota)


class TestGalois:
    def test_default_exact(self, curve):
        assert curve.ramification_points[0].galois_exact == -2 - q

    def test_square(self, curves):
        c = curves["square-mobius"]
        assert c.ramification_points[0].galois_exact == -q

    def test_exact_property(self, curves):
        for c in [curves["joukowski"], curves["square-mobius"]]:
            for rp in c.ramification_points:
                s = rp.galois_exact
                assert c.x.substitute(Z, s) == c.x.substitute(Z, q)
                assert s.substitute(Q, rf_const(rp.beta)) == rf_const(rp.beta)
                assert s != q

    @pytest.mark.parametrize("order", [4, 8])
    def test_series_solves(self, curves, order):
        c = curves["cubic"]
        for i, rp in enumerate(c.ramification_points):
            s = galois_involution(c, i, order).galois_series
            assert s.coefficient(1) == rf_const(-1)
            b = rf_const(rp.beta)
            diff = c.x.substitute(Z, b + series_poly(s)) - c.x.substitute(Z, b + t)
            assert laurent_expand(diff, T, 0, order + 1).min_order > order + 1

    def test_series_stable_under_doubling(self, curves):
        c = curves["cubic"]
        lo = galois_involution(c, 0, 5).galois_series
        hi = galois_involution(c, 0, 10).galois_series
        for k in range(1, 6):
            assert lo.coefficient(k) == hi.coefficient(k)

    def test_cubic_explicit(self, curves):
        # x = z^3 - 3z at beta = 1: 3t^2 + t^3 symmetric gives s = -t - t^2/3 + ...
        c = curves["cubic"]
        i = [rp.beta for rp in c.ramification_points].index(1)
        s = galois_involution(c, i, 3).galois_series
        assert s.coefficient(2) == rf_const(Fraction(-1, 3))


def test_fingerprint_equality(curve):
    from flipsym.curve import default_curve
    assert default_curve() == curve
    assert hash(default_curve()) == hash(curve)
