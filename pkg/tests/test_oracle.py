import random
from fractions import Fraction

import numpy as np
import pytest

from flipsym.algebra import Q, Z, rf_const, rf_var, residue_at
from flipsym.omega import omega_n
from flipsym.oracle import (
    ContourError, NumericCurve, NumericOmega, contour_residue, cross_check_omega, exact_value,
    isolation_radius, sample_points, symmetry_spot_check,
)

q = rf_var(Q)


class TestContour:
    def test_simple_pole(self):
        assert contour_residue(lambda t: 1 / (t - 1), 1, 0.5) == pytest.approx(1, abs=1e-14)

    def test_double_pole(self):
        assert abs(contour_residue(lambda t: 1 / (t - 1) ** 2, 1, 0.5)) < 1e-12

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            contour_residue(lambda t: t, 0, 0)

    def test_pole_on_contour(self):
        with pytest.raises(ContourError), np.errstate(divide="ignore", invalid="ignore"):
            contour_residue(lambda t: 1 / (t - 1.5), 1, 0.5)

    def test_isolation_radius(self):
        assert isolation_radius(0, [1, 3j]) == 0.5
        assert isolation_radius(0, [0.4]) == pytest.approx(0.2)
        assert isolation_radius(0, [0, 0.6]) == pytest.approx(0.3)

    def test_matches_exact_residues(self):
        # 100 random rational functions with rational poles of order <= 4
        rng = random.Random(7)
        for _ in range(100):
            poles = {}
            while len(poles) < rng.randint(1, 4):
                poles[Fraction(rng.randint(-12, 12), rng.randint(1, 4))] = rng.randint(1, 4)
            cs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 5))]
            cs[0] += 1
            num = sum((c * q ** k for k, c in enumerate(cs)), rf_const(0))
            den = rf_const(1)
            for p, k in poles.items():
                den = den * (q - p) ** k
            f = num / den

            # factored evaluation; the expanded denominator cancels badly in floats
            def fn(t, cs=cs, poles=poles):
                out = np.polynomial.polynomial.polyval(t, cs)
                for p, k in poles.items():
                    out = out / (t - float(p)) ** k
                return out

            for p in poles:
                exact = residue_at(f, Q, p)
                ex = exact.evaluate({})
                r = isolation_radius(float(p), [float(o) for o in poles])
                got = contour_residue(fn, float(p), r, tol=1e-12)
                assert abs(got - ex) <= 1e-9 * max(abs(ex), 1.0)

    def test_doubling_stable(self):
        f = lambda t: np.exp(t) / (t - 0.3) ** 3
        a = contour_residue(f, 0.3, 0.2, tol=1e-12)
        b = contour_residue(f, 0.3, 0.2, nodes=512, tol=1e-12)
        assert abs(a - b) < 1e-10 and abs(a - np.exp(0.3) / 2) < 1e-10


class TestNumericCurve:
    def test_default(self, curve):
        nc = NumericCurve.from_curve(curve)
        assert list(nc.betas) == [-1]
        assert nc.y(2.0) == pytest.approx(0.0)
        assert nc.sigma(np.array([0.5 + 0.1j]), -1)[0] == pytest.approx(-2.5 - 0.1j)

    def test_cubic_sigma(self, curves):
        nc = NumericCurve.from_curve(curves["cubic"])
        qs = np.array([1.1 + 0.05j, 0.93 - 0.02j])
        s = nc.sigma(qs, 1.0)
        assert np.allclose(nc.x(s), nc.x(qs)) and np.all(abs(s - qs) > 1e-3)

    def test_exact_value(self, curve):
        w3 = omega_n(curve, 3).coefficient
        v = exact_value(w3, (1 / 3, 2, -5 / 2))
        assert v == pytest.approx(-0.38945299926763516, rel=1e-15)


class TestNumericOmega:
    def test_frozen_point(self, curve):
        num = NumericOmega(curve)
        assert num((1 / 3, 2, -5 / 2)) == pytest.approx(-0.38945299926763516, rel=1e-10)

    def test_n2_closed_form(self, curve):
        rep = cross_check_omega(curve, 2, samples=20, tol=1e-12)
        assert rep.passed, rep.max_deviation

    def test_n3_other_curves(self, curves):
        for name in ("joukowski", "square-mobius"):
            rep = cross_check_omega(curves[name], 3, samples=3, tol=1e-9)
            assert rep.passed, (name, rep.max_deviation)

    def test_symmetry_spot_check(self, curve):
        assert symmetry_spot_check(curve, samples=3) < 1e-9

    def test_unsupported_n(self, curve):
        with pytest.raises(ValueError):
            cross_check_omega(curve, 4)
        with pytest.raises(ValueError):
            NumericOmega(curve)((1.0, 2.0, 3.0, 4.0))

    def test_report(self, curve):
        rep = cross_check_omega(curve, 2, samples=2, tol=1e-12)
        assert rep.as_dict()["samples"] == 2 and rep.as_dict()["passed"]


def test_sample_points(curve):
    pts = sample_points(curve, 3, 10, seed=3)
    assert len(pts) == 10
    for p in pts:
        assert all(0.5 <= abs(w) <= 3 for w in p)
        assert all(abs(w + 1) > 0.25 and abs(w - 1) > 0.25 for w in p)
    assert sample_points(curve, 3, 10, seed=3) == pts
