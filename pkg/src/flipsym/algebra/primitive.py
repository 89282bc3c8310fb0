"""Primitives normalised to vanish at infinity, with logarithmic terms."""
from __future__ import annotations

import cmath
from typing import Mapping

from .ratfunc import (
    ONE, ZERO, AlgebraError, RationalFunction, coeffs_in, degree_in, rf_var,
)
from .series import laurent_expand, pole_order, residue_at


class NotIntegrableAtInfinity(AlgebraError):
    pass


class UnsupportedLogError(AlgebraError):
    pass


class LogExtendedFunction:
    """R + sum_i c_i log(A_i) with R, c_i, A_i rational functions."""

    __slots__ = ("rational", "logs")

    def __init__(self, rational=ZERO, logs: Mapping | None = None):
        self.rational = RationalFunction.coerce(rational)
        self.logs = {}
        for a, c in (logs or {}).items():
            self._add_log(a, c)

    def _add_log(self, arg, coef):
        if coef.is_zero():
            return
        if arg.is_constant():
            raise UnsupportedLogError("log of a constant argument")
        c = self.logs.get(arg, ZERO) + coef
        if c.is_zero():
            self.logs.pop(arg, None)
        else:
            self.logs[arg] = c

    def is_rational(self) -> bool:
        return not self.logs

    def to_rational(self) -> RationalFunction:
        if self.logs:
            raise UnsupportedLogError("logarithmic terms survived")
        return self.rational

    def __add__(self, o):
        if not isinstance(o, LogExtendedFunction):
            o = LogExtendedFunction(o)
        out = LogExtendedFunction(self.rational + o.rational, self.logs)
        for a, c in o.logs.items():
            out._add_log(a, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return LogExtendedFunction(-self.rational, {a: -c for a, c in self.logs.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, g):
        g = RationalFunction.coerce(g)
        return LogExtendedFunction(self.rational * g, {a: c * g for a, c in self.logs.items()})

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, LogExtendedFunction):
            return NotImplemented
        return self.rational == o.rational and self.logs == o.logs

    def differentiate(self, v: int) -> "LogExtendedFunction":
        out = LogExtendedFunction(self.rational.diff(v))
        for a, c in self.logs.items():
            out.rational = out.rational + c * a.diff(v) / a
            dc = c.diff(v)
            if not dc.is_zero():
                out._add_log(a, dc)
        return out

    def rename(self, mapping) -> "LogExtendedFunction":
        return LogExtendedFunction(self.rational.rename(mapping),
                                   {a.rename(mapping): c.rename(mapping) for a, c in self.logs.items()})

    def evaluate(self, point) -> complex:
        val = self.rational.evaluate(point)
        for a, c in self.logs.items():
            val += c.evaluate(point) * cmath.log(a.evaluate(point))
        return val

    def __repr__(self):
        parts = [str(self.rational)]
        parts += [f"({c})*log({a})" for a, c in self.logs.items()]
        return "LogExtendedFunction(" + " + ".join(parts) + ")"


def primitive_from_infinity(f: RationalFunction, v: int) -> LogExtendedFunction:
    """F with dF/dv = f and F -> 0 as v -> infinity."""
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return LogExtendedFunction()
    if degree_in(f.num, v) >= degree_in(f.den, v):
        raise NotIntegrableAtInfinity("integrand does not decay at infinity")
    x = rf_var(v)
    out = LogExtendedFunction()
    rest = f
    _, factors = f.den.factor()
    nonlinear = []
    for fac, _mult in factors:
        d = degree_in(fac, v)
        if d <= 0:
            continue
        if d > 1:
            nonlinear.append(fac)
            continue
        c0, c1 = coeffs_in(fac, v)
        p = RationalFunction(-c0, c1)
        pp = laurent_expand(f, v, p, -1)
        for n, c in pp.coeffs.items():
            if n == -1:
                out._add_log(x - p, c)
            else:
                out.rational = out.rational + c * (x - p) ** (n + 1) / (n + 1)
            rest = rest - c * (x - p) ** n
    if not rest.is_zero():
        out = out + _hermite(rest, v)
    return out


def _hermite(f: RationalFunction, v: int) -> LogExtendedFunction:
    """Horowitz-Ostrogradsky for denominators without linear factors."""
    den = f.den
    d1 = den.gcd(den.derivative(v))
    d2 = den / d1
    n1, n2 = degree_in(d1, v), degree_in(d2, v)
    x = rf_var(v)
    # unknowns: C = sum c_i v^i (i < n1), E = sum e_j v^j (j < n2)
    # f = (C/D1)' + E/D2  <=>  N = C' D2 - C (D2 D1'/D1) + E D1
    D1 = RationalFunction(d1)
    D2 = RationalFunction(d2)
    H = D2 * D1.diff(v) / D1
    if not H.is_polynomial() and not H.den.is_constant():
        # D1 | D2 D1' always holds; guard against surprises
        raise UnsupportedLogError("unexpected Hermite denominator")
    cols = []
    for i in range(n1):
        m = x ** i
        cols.append(m.diff(v) * D2 - m * H)
    for j in range(n2):
        cols.append(x ** j * D1)
    target = RationalFunction(f.num)
    sol = _solve_coefficients(cols, target, v)
    if sol is None:
        raise UnsupportedLogError("Hermite reduction failed")
    C = sum((sol[i] * x ** i for i in range(n1)), ZERO)
    E = sum((sol[n1 + j] * x ** j for j in range(n2)), ZERO)
    out = LogExtendedFunction(C / D1 if n1 else ZERO)
    if E.is_zero():
        return out
    _, facs = d2.factor()
    facs = [RationalFunction(p) for p, _ in facs if degree_in(p, v) > 0]
    cols = []
    for i, p in enumerate(facs):
        rest = ONE
        for j, q in enumerate(facs):
            if j != i:
                rest = rest * q
        cols.append(p.diff(v) * rest)
    scale = D2 / _product(facs)
    cs = _solve_coefficients(cols, E / scale, v)
    if cs is None or any(c.depends_on(v) for c in cs):
        raise UnsupportedLogError("log part needs algebraic extensions")
    for p, c in zip(facs, cs):
        out._add_log(p, c)
    return out


def _product(fs):
    out = ONE
    for f in fs:
        out = out * f
    return out


def _solve_coefficients(cols, target, v):
    """Find constants (free of v) k_i with sum k_i cols[i] == target."""
    if not target.is_polynomial() or any(not c.is_polynomial() for c in cols):
        # clear a common denominator first
        den = target.den
        for c in cols:
            den = den * c.den / den.gcd(c.den)
        scale = RationalFunction(den)
        cols = [c * scale for c in cols]
        target = target * scale
    deg = max([degree_in(c.num, v) for c in cols] + [degree_in(target.num, v), 0])
    rows = []
    for k in range(deg + 1):
        row = []
        for c in cols:
            cs = coeffs_in(c.num, v)
            row.append(RationalFunction(cs[k], c.den) if k < len(cs) else ZERO)
        ts = coeffs_in(target.num, v)
        row.append(RationalFunction(ts[k], target.den) if k < len(ts) else ZERO)
        rows.append(row)
    return _gauss(rows, len(cols))


def _gauss(rows, n):
    rows = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                fct = rows[i][c]
                rows[i] = [a - fct * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][n].is_zero():
            return None
    sol = [ZERO] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return sol


def residue_with_logs(k: RationalFunction, F: LogExtendedFunction, v: int, p) -> LogExtendedFunction:
    """Res_{v=p} k * F for a rational kernel k and log-extended F."""
    p = RationalFunction.coerce(p)
    out = LogExtendedFunction(residue_at(k * F.rational, v, p))
    for a, c in F.logs.items():
        kc = k * c
        m = pole_order(kc, v, p)
        if m == 0:
            continue
        ap = a.substitute(v, p)
        if ap.is_zero():
            raise UnsupportedLogError("logarithm singular at the residue point")
        ser = laurent_expand(kc, v, p, -1)
        lead = ser.coefficient(-1)
        if m > 1:
            dl = laurent_expand(a.diff(v) / a, v, p, m - 2)
            for j in range(1, m):
                cj = ser.coefficient(-1 - j)
                if not cj.is_zero():
                    out.rational = out.rational + cj * dl.coefficient(j - 1) / j
        if not lead.is_zero():
            if ap.is_constant():
                raise UnsupportedLogError("constant logarithm in a residue")
            out._add_log(ap, lead)
    return out
