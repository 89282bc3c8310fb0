"""Spectral curve data: the covering x, the involution iota and derived y."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    Q, T, Z, LaurentSeries, RationalFunction, laurent_expand, rf_const, rf_var,
)
from .algebra.ratfunc import coeffs_in, degree_in
from .algebra.series import constant_series


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b)/(c z - a)."""
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.a * self.a + self.b * self.c == 0:
            raise CurveError("iota is degenerate: a^2 + b c = 0")

    @property
    def d(self) -> Fraction:
        return -self.a

    def apply(self, f):
        """iota(f) for a rational function or number f."""
        if isinstance(f, RationalFunction):
            return (self.a * f + self.b) / (self.c * f - self.a)
        f = Fraction(f)
        den = self.c * f - self.a
        if den == 0:
            return None  # infinity
        return (self.a * f + self.b) / den

    def of(self, v: int) -> RationalFunction:
        return self.apply(rf_var(v))

    def derivative(self, v: int) -> RationalFunction:
        # d/dz (az+b)/(cz-a) = -(a^2+bc)/(cz-a)^2
        return rf_const(-(self.a * self.a + self.b * self.c)) / (self.c * rf_var(v) - self.a) ** 2

    def infinity_image(self):
        """iota(infinity), or None when it is infinity."""
        return None if self.c == 0 else self.a / self.c


@dataclass(frozen=True)
class RamificationPoint:
    beta: Fraction
    galois_exact: RationalFunction | None = None  # sigma(q) in slot Q
    galois_series: LaurentSeries | None = None    # sigma(beta+t) - beta in slot T


@dataclass(frozen=True, eq=False)
class Curve:
    x: RationalFunction          # in slot Z
    iota: MobiusMap
    y: RationalFunction          # y(z) = -x(iota z), slot Z
    ramification_points: tuple = field(default_factory=tuple)

    @property
    def degree(self) -> int:
        return max(degree_in(self.x.num, Z), degree_in(self.x.den, Z))

    def dx(self) -> RationalFunction:
        return self.x.diff(Z)

    def at(self, f: RationalFunction, g) -> RationalFunction:
        """Evaluate a curve function (slot Z) at g (a slot or a rational function)."""
        if isinstance(g, int):
            g = rf_var(g)
        return f.substitute(Z, g)

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.x.num}|{self.x.den}|{self.iota.a}|{self.iota.b}|{self.iota.c}".encode())
        return h.hexdigest()[:16]

    def __hash__(self):
        return hash(self.fingerprint)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.fingerprint == other.fingerprint


def _rational_roots(poly):
    """Roots of a univariate integer polynomial in slot Z; raises on
    non-rational or repeated roots."""
    _, facs = poly.factor()
    roots = []
    for f, m in facs:
        d = degree_in(f, Z)
        if d <= 0:
            continue
        if m > 1:
            raise CurveError("non-simple ramification: x' has a repeated root")
        if d > 1:
            raise CurveError("irrational ramification points; use the numeric oracle mode")
        c0, c1 = coeffs_in(f, Z)
        roots.append(-RationalFunction(c0, c1).constant_value())
    return sorted(roots)


def _poles(x: RationalFunction):
    _, facs = x.den.factor()
    out = []
    for f, _ in facs:
        if degree_in(f, Z) == 1:
            c0, c1 = coeffs_in(f, Z)
            out.append(-RationalFunction(c0, c1).constant_value())
    return out


def _fmt(b: Fraction) -> str:
    return str(b)


def validate_curve(x: RationalFunction, iota: MobiusMap, series_order: int = 8) -> Curve:
    if not isinstance(iota, MobiusMap):
        raise CurveError("iota must be a MobiusMap")
    if x.variables() - {Z}:
        raise CurveError("x must be a rational function of z only")
    if x.is_constant():
        raise CurveError("x is constant")
    dx = x.diff(Z)
    g = dx.num.gcd(dx.num.derivative(Z))
    if degree_in(g, Z) > 0:
        raise CurveError("non-simple ramification: x' has a repeated root")
    betas = _rational_roots(dx.num)
    poles = _poles(x)
    pole_at_inf = degree_in(x.num, Z) > degree_in(x.den, Z)
    for b in betas:
        ib = iota.apply(b)
        if ib is None:
            if pole_at_inf:
                raise CurveError(f"iota maps ramification point beta={_fmt(b)} to a pole of x")
            raise CurveError(f"iota maps ramification point beta={_fmt(b)} to infinity")
        if ib == b:
            raise CurveError(f"iota fixes ramification point beta={_fmt(b)}")
        if ib in betas:
            raise CurveError(f"iota permutes ramification points beta={_fmt(b)} and {_fmt(ib)}")
        if ib in poles:
            raise CurveError(f"iota maps ramification point beta={_fmt(b)} to a pole of x")
    y = -x.substitute(Z, iota.of(Z))
    curve = Curve(x=x, iota=iota, y=y)
    rps = tuple(_galois(curve, b, series_order) for b in betas)
    object.__setattr__(curve, "ramification_points", rps)
    return curve


def y_of(curve: Curve) -> RationalFunction:
    return curve.y


def _galois(curve: Curve, beta: Fraction, order: int) -> RamificationPoint:
    if curve.degree == 2:
        return RamificationPoint(beta, galois_exact=_exact_sigma(curve, beta))
    return RamificationPoint(beta, galois_series=_series_sigma(curve, beta, order))


def galois_involution(curve: Curve, i: int, order: int = 8) -> RamificationPoint:
    beta = curve.ramification_points[i].beta
    if curve.degree == 2:
        return RamificationPoint(beta, galois_exact=_exact_sigma(curve, beta))
    return RamificationPoint(beta, galois_series=_series_sigma(curve, beta, order))


def _exact_sigma(curve: Curve, beta: Fraction) -> RationalFunction:
    # N(w) D(q) - N(q) D(w) = (w - q) * (c1(q) w + c0(q)); second root -c0/c1
    xn, xd = curve.x.num, curve.x.den
    w = rf_var(T)
    N_w = RationalFunction(xn).substitute(Z, w)
    D_w = RationalFunction(xd).substitute(Z, w)
    N_q = RationalFunction(xn).substitute(Z, rf_var(Q))
    D_q = RationalFunction(xd).substitute(Z, rf_var(Q))
    P = N_w * D_q - N_q * D_w
    quo = P / (w - rf_var(Q))
    if not quo.is_polynomial():
        raise CurveError("deck transformation: unexpected remainder")
    cs = coeffs_in(quo.num, T)
    if len(cs) != 2:
        raise CurveError("deck transformation is not linear")
    sigma = -RationalFunction(cs[0]) / RationalFunction(cs[1])
    if sigma.substitute(Q, rf_const(beta)) != rf_const(beta):
        raise CurveError("deck transformation does not fix the ramification point")
    return sigma


def _series_sigma(curve: Curve, beta: Fraction, order: int) -> LaurentSeries:
    """s(t) with x(beta + s(t)) = x(beta + t), s = -t + O(t^2), exact through ``order``."""
    b = rf_const(beta)
    X = laurent_expand(curve.x, Z, b, order + 2)
    xs = {k - 0: c for k, c in X.coeffs.items() if k > 0}
    # X(e) - X(0) = xi2 e^2 + xi3 e^3 + ...; solve X(s) = X(t)
    xi2 = xs.get(2)
    if xi2 is None or xi2.is_zero():
        raise CurveError("Newton iteration cannot separate sigma from identity")
    def P(e: LaurentSeries) -> LaurentSeries:
        out = LaurentSeries(T, b, {}, e.trunc + 1)
        pw = e
        for k in range(1, order + 3):
            c = xs.get(k)
            if c is not None:
                out = out + pw.scale(c)
            pw = pw * e
        return out
    def dP(e: LaurentSeries) -> LaurentSeries:
        out = LaurentSeries(T, b, {}, e.trunc + 1)
        pw = constant_series(T, b, 1)
        for k in range(1, order + 3):
            c = xs.get(k)
            if c is not None:
                out = out + pw.scale(c * k)
            pw = pw * e
        return out
    t = LaurentSeries(T, b, {1: rf_const(1)}, 10 ** 6)
    target = P(t.truncate(order + 2)).truncate(order + 1)
    s = LaurentSeries(T, b, {1: rf_const(-1)}, 1)
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        s_ext = LaurentSeries(T, b, dict(s.coeffs), prec)
        # x(s) - x(t) = O(t^{2+...}); divide by x'(s) = O(t) after cancelling one t
        resid = (P(s_ext) - target).truncate(prec + 1)
        deriv = dP(s_ext).truncate(prec)
        corr = resid * deriv.inverse()
        s = (s_ext - corr).truncate(prec)
        s = LaurentSeries(T, b, s.coeffs, prec)
    if s.coefficient(1) != rf_const(-1):
        raise CurveError("Newton iteration converged to the identity branch")
    return s.truncate(order)


def default_curve() -> Curve:
    z = rf_var(Z)
    return validate_curve(z * z + 2 * z, MobiusMap(1, 0, 0))
