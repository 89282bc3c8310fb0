"""Curve files, serialized forms and LaTeX rendering."""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from pathlib import Path

from .algebra import CTX, NAMES, NVARS, Z, RationalFunction
from .algebra.ratfunc import coeffs_in
from .curve import Curve, CurveError, MobiusMap, validate_curve
from .omega import OmegaForm


class FormatError(ValueError):
    """Malformed input document."""


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise FormatError(f"rational {s!r} must be an integer or a quoted 'p/q' string")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise FormatError(f"rational {s!r} must be a quoted 'p/q' string")
    text = s.strip()
    if "." in text or "e" in text.lower():
        raise FormatError(f"rational {s!r} must be of the form p/q")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse rational {s!r}") from None


def _univariate(p) -> list[Fraction]:
    cs = coeffs_in(p, Z)
    return [Fraction(int(c.coefficient(0)) if not c.is_zero() else 0) for c in cs]


def curve_to_dict(curve: Curve) -> dict:
    return {
        "x": {"num": [str(c) for c in _univariate(curve.x.num)],
              "den": [str(c) for c in _univariate(curve.x.den)]},
        "iota": {"a": str(curve.iota.a), "b": str(curve.iota.b), "c": str(curve.iota.c)},
    }


def curve_from_dict(doc) -> Curve:
    if not isinstance(doc, dict):
        raise FormatError("curve document must be an object")
    try:
        x, iota = doc["x"], doc["iota"]
        num, den = x["num"], x.get("den", ["1"])
        a, b, c = iota["a"], iota["b"], iota["c"]
    except (KeyError, TypeError) as e:
        raise FormatError(f"curve document is missing field {e}") from None
    if not isinstance(num, list) or not isinstance(den, list) or not num or not den:
        raise FormatError("x.num and x.den must be non-empty coefficient arrays")
    num = [parse_rational(v) for v in num]
    den = [parse_rational(v) for v in den]
    if all(v == 0 for v in den):
        raise CurveError("x.den is the zero polynomial")
    xf = RationalFunction.from_univariate(num, den, Z)
    m = MobiusMap(parse_rational(a), parse_rational(b), parse_rational(c))
    return validate_curve(xf, m)


def load_curve(path) -> Curve:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FormatError(f"cannot read curve file {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"curve file {path} is not valid JSON: {e.msg}") from None
    return curve_from_dict(doc)


def dump_curve(curve: Curve, path) -> None:
    Path(path).write_text(json.dumps(curve_to_dict(curve), indent=2) + "\n")


# forms

def _poly_terms(p, variables) -> list[dict]:
    out = []
    for exps, c in p.to_dict().items():
        if any(exps[v] for v in range(NVARS) if v not in variables):
            raise FormatError("polynomial uses a slot outside the form variables")
        out.append({"exp": [int(exps[v]) for v in variables], "coeff": str(int(c))})
    out.sort(key=lambda t: (-sum(t["exp"]), [-e for e in t["exp"]]))
    return out


def form_to_dict(form: OmegaForm, latex: bool = False) -> dict:
    vs = list(form.variables)
    doc = {
        "n": form.arity,
        "variables": [NAMES[v] for v in vs],
        "num": _poly_terms(form.coefficient.num, vs),
        "den": _poly_terms(form.coefficient.den, vs),
    }
    if latex:
        doc["latex"] = form_latex(form)
    return doc


def _poly_from_terms(terms, variables):
    if not isinstance(terms, list):
        raise FormatError("num/den must be arrays of terms")
    rows = []
    for t in terms:
        try:
            exp, coeff = t["exp"], parse_rational(t["coeff"])
        except (KeyError, TypeError):
            raise FormatError("each term needs exp and coeff") from None
        if not isinstance(exp, list) or len(exp) != len(variables) or \
                any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exp):
            raise FormatError(f"bad exponent vector {exp!r}")
        rows.append((exp, coeff))
    scale = lcm(1, *(c.denominator for _, c in rows))
    d: dict = {}
    for exp, c in rows:
        full = [0] * NVARS
        for v, e in zip(variables, exp):
            full[v] = e
        key = tuple(full)
        d[key] = d.get(key, 0) + int(c * scale)
    d = {k: v for k, v in d.items() if v}
    return CTX.from_dict(d) if d else CTX.constant(0), scale


def form_from_dict(doc) -> OmegaForm:
    try:
        n, names = doc["n"], doc["variables"]
        num_t, den_t = doc["num"], doc["den"]
    except (KeyError, TypeError) as e:
        raise FormatError(f"form document is missing field {e}") from None
    if not isinstance(names, list) or len(names) != n:
        raise FormatError("variables must list n slot names")
    try:
        vs = tuple(NAMES.index(x) for x in names)
    except ValueError:
        raise FormatError(f"unknown variable in {names!r}") from None
    num, sn = _poly_from_terms(num_t, vs)
    den, sd = _poly_from_terms(den_t, vs)
    if den.is_zero():
        raise FormatError("zero denominator")
    coef = RationalFunction(num * sd, den * sn)
    return OmegaForm(n, vs, coef)


def load_form(path) -> OmegaForm:
    try:
        return form_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as e:
        raise FormatError(f"form file is not valid JSON: {e.msg}") from None


# rendering

def _latex_name(v: int) -> str:
    name = NAMES[v]
    if name[0] == "u" and name[1:].isdigit():
        return f"u_{{{name[1:]}}}"
    return name


def _latex_poly(p) -> str:
    terms = sorted(p.to_dict().items(), key=lambda t: (-sum(t[0]), [-e for e in t[0]]))
    if not terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(terms):
        c = int(c)
        mon = " ".join(_latex_name(v) + (f"^{{{e}}}" if e > 1 else "")
                       for v, e in enumerate(exps) if e)
        sign = "-" if c < 0 else ("+" if i else "")
        mag = abs(c)
        body = mon if mon and mag == 1 else (f"{mag} {mon}".strip())
        out.append(f"{sign} {body}".strip() if i else f"{sign}{body}")
    return " ".join(out)


def _latex_factored(p) -> str:
    content, factors = p.factor()
    parts = []
    if int(content) != 1:
        parts.append(str(int(content)))
    for f, e in factors:
        s = _latex_poly(f)
        if len(f.to_dict()) > 1 or e > 1:
            s = f"\\left({s}\\right)"
        parts.append(s + (f"^{{{e}}}" if e > 1 else ""))
    return " ".join(parts) if parts else "1"


def rf_latex(f: RationalFunction) -> str:
    num = _latex_poly(f.num)
    if f.den.is_one():
        return num
    return f"\\frac{{{num}}}{{{_latex_factored(f.den)}}}"


def form_latex(form: OmegaForm) -> str:
    args = ", ".join(_latex_name(v) for v in form.variables)
    diffs = " ".join(f"d{_latex_name(v)}" for v in form.variables)
    return f"\\omega_{{{form.arity}}}({args}) = {rf_latex(form.coefficient)}\\, {diffs}"


def form_plain(form: OmegaForm) -> str:
    args = ", ".join(NAMES[v] for v in form.variables)
    return f"omega_{form.arity}({args}) = {form.coefficient}"
