import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from flipsym.algebra import U1, Z, rf_var
from flipsym.curve import CurveError, MobiusMap, validate_curve
from flipsym.io import (
    FormatError, curve_from_dict, curve_to_dict, dump_curve, form_from_dict, form_latex,
    form_plain, form_to_dict, load_curve, load_form, parse_rational, rf_latex,
)
from flipsym.omega import OmegaForm, omega2, omega_n

CURVES = Path(__file__).resolve().parent.parent / "curves"
z = rf_var(Z)


class TestRational:
    @pytest.mark.parametrize("text,value", [("3", 3), ("-2/6", Fraction(-1, 3)), (" 5/1 ", 5), (7, 7)])
    def test_ok(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["0.5", "1e3", "x", "1/0", 0.5, True, None, [1]])
    def test_rejected(self, bad):
        with pytest.raises(FormatError):
            parse_rational(bad)


class TestCurveFiles:
    def test_default_file(self, curve):
        assert load_curve(CURVES / "default.curve") == curve

    def test_shipped_files(self):
        for name in ("joukowski", "square_mobius", "cubic"):
            assert load_curve(CURVES / f"{name}.curve").ramification_points

    def test_bad_curve(self):
        with pytest.raises(CurveError, match="fixes ramification point beta=0"):
            load_curve(CURVES / "bad.curve")

    def test_round_trip(self, curves, tmp_path):
        for c in curves.values():
            dump_curve(c, tmp_path / "c.curve")
            again = load_curve(tmp_path / "c.curve")
            assert again == c and again.x == c.x
            assert curve_to_dict(again) == curve_to_dict(c)

    def test_rational_coefficients_bit_exact(self, tmp_path):
        doc = {"x": {"num": ["0", "1/3", "2/7"], "den": ["1"]},
               "iota": {"a": "1/2", "b": "3", "c": "0"}}
        c = curve_from_dict(doc)
        assert curve_to_dict(c)["iota"] == {"a": "1/2", "b": "3", "c": "0"}
        assert curve_from_dict(curve_to_dict(c)) == c

    @pytest.mark.parametrize("doc", [
        [], {"x": {}}, {"x": {"num": []}, "iota": {"a": "1", "b": "0", "c": "0"}},
        {"x": {"num": ["1", 0.5]}, "iota": {"a": "1", "b": "0", "c": "0"}},
        {"x": {"num": ["0", "1"]}, "iota": {"a": "1", "b": "0"}},
    ])
    def test_malformed(self, doc):
        with pytest.raises(FormatError):
            curve_from_dict(doc)

    def test_zero_denominator(self):
        with pytest.raises(CurveError):
            curve_from_dict({"x": {"num": ["0", "1"], "den": ["0"]},
                             "iota": {"a": "1", "b": "0", "c": "0"}})

    def test_not_json(self, tmp_path):
        p = tmp_path / "x.curve"
        p.write_text("{nope")
        with pytest.raises(FormatError):
            load_curve(p)
        with pytest.raises(FormatError):
            load_curve(tmp_path / "missing.curve")


class TestForms:
    def test_round_trip(self, curve, tmp_path):
        for n in (2, 3):
            w = omega_n(curve, n)
            p = tmp_path / "w.json"
            p.write_text(json.dumps(form_to_dict(w, latex=True)))
            back = load_form(p)
            assert back.coefficient == w.coefficient and back.variables == w.variables

    @given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.fractions(-5, 5)),
                    min_size=1, max_size=5))
    def test_round_trip_random(self, terms):
        u = rf_var(U1)
        num = sum((c * z ** a * u ** b for a, b, c in terms), 0 * z) + 1
        f = OmegaForm(2, (Z, U1), num / (z - u) ** 2)
        assert form_from_dict(form_to_dict(f)).coefficient == f.coefficient

    def test_rejects(self):
        with pytest.raises(FormatError):
            form_from_dict({"n": 2, "variables": ["z"], "num": [], "den": []})
        with pytest.raises(FormatError):
            form_from_dict({"n": 1, "variables": ["v"], "num": [], "den": []})
        with pytest.raises(FormatError):
            form_from_dict({"n": 1, "variables": ["z"], "num": [], "den": []})
        with pytest.raises(FormatError):
            form_from_dict({"n": 1, "variables": ["z"], "num": [{"exp": [-1], "coeff": "1"}],
                            "den": [{"exp": [0], "coeff": "1"}]})


class TestRendering:
    def test_latex_omega2(self, curve):
        s = form_latex(omega2(curve))
        assert s.startswith("\\omega_{2}(z, u_{1}) = \\frac{")
        assert "\\left(z - u_{1}\\right)^{2}" in s and "\\left(z + u_{1}\\right)^{2}" in s

    def test_latex_polynomial(self):
        assert rf_latex(z * z - 3 * z + 1) == "z^{2} - 3 z + 1"

    def test_plain(self, curve):
        assert form_plain(omega2(curve)).startswith("omega_2(z, u1) = ")
