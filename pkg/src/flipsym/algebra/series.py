"""Truncated Laurent series and residues at (possibly moving) points."""
from __future__ import annotations

from dataclasses import dataclass, field

from .ratfunc import (
    ONE, ZERO, AlgebraError, RationalFunction, coeffs_in, rf_var, valuation_in,
)


class NonIsolatedSingularityError(AlgebraError):
    pass


@dataclass
class LaurentSeries:
    """sum c_n t^n with t the local coordinate at ``point``.

    ``coeffs`` holds the nonzero coefficients; everything of order <= ``trunc``
    is known exactly, higher orders are unknown.
    """
    var: int
    point: RationalFunction
    coeffs: dict = field(default_factory=dict)
    trunc: int = 0

    def coefficient(self, n: int) -> RationalFunction:
        if n > self.trunc:
            raise AlgebraError(f"order {n} beyond truncation {self.trunc}")
        return self.coeffs.get(n, ZERO)

    @property
    def valuation(self):
        ks = [k for k in self.coeffs if k <= self.trunc]
        return min(ks) if ks else None

    @property
    def min_order(self):
        v = self.valuation
        return self.trunc + 1 if v is None else v

    def principal_part(self) -> RationalFunction:
        """sum_{n<0} c_n (v - p)^n as a rational function in ``var``."""
        t = rf_var(self.var) - self.point
        out = ZERO
        for n, c in self.coeffs.items():
            if n < 0:
                out = out + c * t ** n
        return out

    def truncate(self, trunc: int) -> "LaurentSeries":
        trunc = min(trunc, self.trunc)
        return LaurentSeries(self.var, self.point,
                             {k: c for k, c in self.coeffs.items() if k <= trunc}, trunc)

    def _like(self, coeffs, trunc):
        return LaurentSeries(self.var, self.point,
                             {k: c for k, c in coeffs.items() if k <= trunc and not c.is_zero()},
                             trunc)

    def __add__(self, o):
        if not isinstance(o, LaurentSeries):
            o = constant_series(self.var, self.point, RationalFunction.coerce(o))
        trunc = min(self.trunc, o.trunc)
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return self._like(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> "LaurentSeries":
        c = RationalFunction.coerce(c)
        return self._like({k: v * c for k, v in self.coeffs.items()}, self.trunc)

    def __mul__(self, o):
        if not isinstance(o, LaurentSeries):
            return self.scale(o)
        va, vb = self.min_order, o.min_order
        trunc = min(va + o.trunc, vb + self.trunc)
        out: dict = {}
        for i, a in self.coeffs.items():
            if i > self.trunc:
                continue
            for j, b in o.coeffs.items():
                if j > o.trunc or i + j > trunc:
                    continue
                out[i + j] = out.get(i + j, ZERO) + a * b
        return self._like(out, trunc)

    __rmul__ = __mul__

    def shift_order(self, k: int) -> "LaurentSeries":
        return self._like({n + k: c for n, c in self.coeffs.items()}, self.trunc + k)

    def inverse(self) -> "LaurentSeries":
        v = self.valuation
        if v is None:
            raise AlgebraError("inverse of a series that vanishes to its truncation order")
        # normalised unit u = self / t^v, known to order trunc - v
        n = self.trunc - v
        u = [self.coeffs.get(v + k, ZERO) for k in range(n + 1)]
        inv0 = u[0].inverse()
        w = [inv0]
        for k in range(1, n + 1):
            acc = ZERO
            for i in range(1, k + 1):
                if not u[i].is_zero():
                    acc = acc + u[i] * w[k - i]
            w.append(-acc * inv0)
        return self._like({k - v: c for k, c in enumerate(w)}, n - v)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = constant_series(self.var, self.point, ONE, trunc=self.trunc + 10 ** 6)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def compose(self, s: "LaurentSeries") -> "LaurentSeries":
        """self(s(t)) where s has valuation exactly 1."""
        if s.valuation != 1:
            raise AlgebraError("inner series must vanish to first order")
        if not self.coeffs:
            return LaurentSeries(s.var, s.point, {}, self.trunc)
        lo = self.min_order
        out = LaurentSeries(s.var, s.point, {}, self.trunc)
        sinv = s.inverse() if lo < 0 else None
        for n in range(lo, self.trunc + 1):
            c = self.coeffs.get(n)
            if c is None:
                continue
            term = (s ** n) if n >= 0 else (sinv ** (-n))
            out = out + term.scale(c)
        return out


def constant_series(var, point, c, trunc=10 ** 6) -> LaurentSeries:
    c = RationalFunction.coerce(c)
    return LaurentSeries(var, point, {} if c.is_zero() else {0: c}, trunc)


def _check_point(v: int, p: RationalFunction):
    if p.depends_on(v):
        raise AlgebraError("expansion point depends on the expansion variable")


def _shifted(f: RationalFunction, v: int, p: RationalFunction):
    """Numerator and denominator coefficient lists of f(p + t) in t (slot v)."""
    # v -> p + v is an automorphism over the other variables, so numerator
    # and denominator stay coprime in v; the gcd would only strip factors
    # free of v, which do not affect valuations
    g = f.substitute(v, p + rf_var(v), reduce=False)
    return coeffs_in(g.num, v), coeffs_in(g.den, v)


def _series_quotient(a: list, e: list, count: int, only_last: bool = False) -> list:
    """First ``count`` coefficients of A/E with E(0) != 0, as rational functions.

    With ``only_last`` just the final coefficient is normalised and returned."""
    e0 = e[0]
    gam = []
    # gamma_j = a_j e0^j - sum_{i=1}^j e_i gamma_{j-i} e0^{i-1}; c_j = gamma_j / e0^{j+1}
    e0p = [e0 ** 0]
    for j in range(1, count + 1):
        e0p.append(e0p[-1] * e0)
    for j in range(count):
        acc = (a[j] * e0p[j]) if j < len(a) else None
        for i in range(1, j + 1):
            if i < len(e) and not e[i].is_zero():
                t = e[i] * gam[j - i] * e0p[i - 1]
                acc = -t if acc is None else acc - t
        if acc is None:
            acc = e0 * 0
        gam.append(acc)
    if only_last:
        return [RationalFunction(gam[-1], e0p[count])]
    return [RationalFunction(g, e0p[j + 1]) for j, g in enumerate(gam)]


def laurent_expand(f: RationalFunction, v: int, p, order: int) -> LaurentSeries:
    """Laurent expansion of f in slot v at v = p, exact through ``order``."""
    p = RationalFunction.coerce(p)
    _check_point(v, p)
    if f.is_zero():
        return LaurentSeries(v, p, {}, order)
    a, e = _shifted(f, v, p)
    ka, ke = valuation_in(a), valuation_in(e)
    if ke < 0:
        raise NonIsolatedSingularityError("denominator vanishes identically at the point")
    lo = ka - ke
    count = order - lo + 1
    if count <= 0:
        return LaurentSeries(v, p, {}, order)
    cs = _series_quotient(a[ka:], e[ke:], count)
    return LaurentSeries(v, p, {lo + j: c for j, c in enumerate(cs) if not c.is_zero()}, order)


def pole_order(f: RationalFunction, v: int, p) -> int:
    """Order of the pole of f at v = p (0 if regular)."""
    p = RationalFunction.coerce(p)
    _check_point(v, p)
    lin = p.den * rf_var(v).num - p.num
    d = f.den
    k = 0
    while True:
        q, r = divmod(d, lin)
        if not r.is_zero():
            return k
        d = q
        k += 1


def residue_at(f: RationalFunction, v: int, p) -> RationalFunction:
    """Res_{v=p} f dv via the derivative formula for a pole of order k:
    (1/(k-1)!) d^{k-1}/dv^{k-1} [(v-p)^k f] at v = p."""
    p = RationalFunction.coerce(p)
    _check_point(v, p)
    if f.is_zero():
        return ZERO
    lin = p.den * rf_var(v).num - p.num
    d = f.den
    k = 0
    while True:
        q, r = divmod(d, lin)
        if not r.is_zero():
            break
        d = q
        k += 1
    if k == 0:
        return ZERO
    # D = L^k D~ with L = Q (v - p), so (v-p)^k f = N / (Q^k D~)
    g = RationalFunction(f.num, d) * RationalFunction(p.den) ** (-k)
    a, e = _shifted(g, v, p)
    if valuation_in(e) != 0:
        raise NonIsolatedSingularityError("residual denominator vanishes at the point")
    ka = valuation_in(a)
    if ka < 0 or ka > k - 1:
        return ZERO
    return _series_quotient(a, e, k, only_last=True)[0]


def residue_by_differentiation(f: RationalFunction, v: int, p) -> RationalFunction:
    """Literal derivative formula; slow, used as an independent check."""
    p = RationalFunction.coerce(p)
    k = pole_order(f, v, p)
    if k == 0:
        return ZERO
    g = f * (rf_var(v) - p) ** k
    for _ in range(k - 1):
        g = g.diff(v)
    fact = 1
    for i in range(2, k):
        fact *= i
    return g.substitute(v, p) / fact
