"""Exact multivariate rational functions over Q.

Every function lives in one global polynomial ring with a fixed pool of
variable slots.  A ``RationalFunction`` keeps an integer numerator and
denominator with gcd 1 (integer content included) and a positive leading
coefficient in the denominator, so structural equality is mathematical
equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import flint

# slot 0 is the distinguished argument z, slots 1..9 the remaining form
# arguments, the rest are scratch variables used by residues and primitives
NAMES = ("z", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9",
         "q", "qt", "r", "w", "t", "s")
NVARS = len(NAMES)
Z, U1 = 0, 1
Q, QT, R, W, T, S = 10, 11, 12, 13, 14, 15

CTX = flint.fmpz_mpoly_ctx.get(NAMES, "deglex")
_GENS = CTX.gens()
_ZERO = CTX.constant(0)
_ONE = CTX.constant(1)


class AlgebraError(Exception):
    pass


def var_name(v: int) -> str:
    return NAMES[v]


def var_index(name: str) -> int:
    try:
        return NAMES.index(name)
    except ValueError:
        raise AlgebraError(f"unknown variable {name!r}") from None


def poly_vars(p) -> set[int]:
    return {i for i, d in enumerate(p.degrees()) if d > 0}


def degree_in(p, v: int) -> int:
    if p.is_zero():
        return -1
    return p.degrees()[v]


def coeffs_in(p, v: int) -> list:
    """Coefficients of ``p`` as a polynomial in slot ``v`` (ascending)."""
    d = degree_in(p, v)
    if d <= 0:
        return [p] if d == 0 else []
    buckets: list[dict] = [dict() for _ in range(d + 1)]
    for exps, c in p.to_dict().items():
        e = list(exps)
        k = e[v]
        e[v] = 0
        buckets[k][tuple(e)] = c
    return [CTX.from_dict(b) if b else _ZERO for b in buckets]


def valuation_in(coeffs: list) -> int:
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            return i
    return -1


def _normalize(num, den):
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced: bool = False):
        if den is None:
            den = _ONE
        if not _reduced:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction
    @classmethod
    def const(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls(CTX.constant(c.numerator), CTX.constant(c.denominator), _reduced=True)

    @classmethod
    def var(cls, v: int) -> "RationalFunction":
        return cls(_GENS[v], _ONE, _reduced=True)

    @classmethod
    def from_univariate(cls, num_coeffs, den_coeffs, v: int = Z) -> "RationalFunction":
        """Build from ascending rational coefficient lists in slot ``v``."""
        return _upoly(num_coeffs, v) / _upoly(den_coeffs, v)

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError("not a constant")
        n = int(self.num.coefficient(0)) if not self.num.is_zero() else 0
        return Fraction(n, int(self.den.coefficient(0)))

    def variables(self) -> set[int]:
        return poly_vars(self.num) | poly_vars(self.den)

    def depends_on(self, v: int) -> bool:
        return degree_in(self.num, v) > 0 or degree_in(self.den, v) > 0

    # arithmetic
    def __add__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        a, b, c, d = self.num, self.den, o.num, o.den
        if b == d:
            return RationalFunction(a + c, b)
        if b.is_one():
            return RationalFunction(a * d + c, d, _reduced=True)
        if d.is_one():
            return RationalFunction(a + c * b, b, _reduced=True)
        g = b.gcd(d)
        if g.is_one():
            return RationalFunction(a * d + c * b, b * d, _reduced=True)
        b1, d1 = b / g, d / g
        n = a * d1 + c * b1
        if n.is_zero():
            return ZERO
        h = n.gcd(g)
        if not h.is_one():
            n = n / h
            g = g / h
        den = b1 * d1 * g
        if den.leading_coefficient() < 0:
            n, den = -n, -den
        return RationalFunction(n, den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = a.gcd(d) if not d.is_one() else _ONE
        g2 = c.gcd(b) if not b.is_one() else _ONE
        if not g1.is_one():
            a, d = a / g1, d / g1
        if not g2.is_one():
            c, b = c / g2, b / g2
        n, den = a * c, b * d
        if den.leading_coefficient() < 0:
            n, den = -n, -den
        return RationalFunction(n, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RationalFunction(n, d, _reduced=True)

    def __truediv__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    # calculus and substitution
    def diff(self, v: int) -> "RationalFunction":
        n, d = self.num, self.den
        if degree_in(d, v) <= 0:
            return RationalFunction(n.derivative(v), d)
        return RationalFunction(n.derivative(v) * d - n * d.derivative(v), d * d)

    def rename(self, mapping: Mapping[int, int]) -> "RationalFunction":
        """Simultaneous permutation/renaming of variable slots."""
        if not mapping:
            return self
        imgs = list(_GENS)
        for a, b in mapping.items():
            imgs[a] = _GENS[b]
        n = self.num.compose(*imgs)
        d = self.den.compose(*imgs)
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        if len(set(mapping.values())) == len(mapping) and _is_injective_rename(mapping, self):
            return RationalFunction(n, d, _reduced=True)
        return RationalFunction(n, d)

    def substitute(self, v: int, g, reduce: bool = True) -> "RationalFunction":
        """Replace slot ``v`` by the rational function ``g``.

        ``reduce=False`` skips the final gcd; only safe when the caller needs
        the ratio but not the canonical form."""
        g = RationalFunction.coerce(g)
        n, d = self.num, self.den
        dn, dd = degree_in(n, v), degree_in(d, v)
        if dn <= 0 and dd <= 0:
            return self
        nn = _horner(coeffs_in(n, v), g.num, g.den)
        nd = _horner(coeffs_in(d, v), g.num, g.den)
        if dd > dn:
            nn = nn * g.den ** (dd - dn)
        elif dn > dd:
            nd = nd * g.den ** (dn - dd)
        if not reduce:
            if nd.leading_coefficient() < 0:
                nn, nd = -nn, -nd
            return RationalFunction(nn, nd, _reduced=True)
        return RationalFunction(nn, nd)

    def evaluate(self, point: Mapping[int, complex]) -> complex:
        """Numeric value; slots absent from ``point`` must not occur."""
        return _peval(self.num, point) / _peval(self.den, point)


def _is_injective_rename(mapping, f) -> bool:
    # a renaming is an automorphism of the ring only if it does not merge
    # a slot onto another slot that f still uses
    used = f.variables()
    targets = set(mapping.values())
    untouched = used - set(mapping)
    return not (targets & untouched)


def _horner(cs, gn, gd):
    d = len(cs) - 1
    if d < 0:
        return _ZERO
    acc = cs[d]
    gdp = _ONE
    for i in range(d - 1, -1, -1):
        gdp = gdp * gd
        acc = acc * gn + cs[i] * gdp
    return acc


def _peval(p, point) -> complex:
    total = 0j
    for exps, c in p.to_dict().items():
        term = complex(int(c))
        for i, e in enumerate(exps):
            if e:
                term *= point[i] ** int(e)
        total += term
    return total


def _upoly(coeffs, v):
    coeffs = [Fraction(c) for c in coeffs]
    f = ZERO
    x = RationalFunction.var(v)
    for c in reversed(coeffs):
        f = f * x + RationalFunction.const(c)
    return f


ZERO = RationalFunction(_ZERO, _ONE, _reduced=True)
ONE = RationalFunction(_ONE, _ONE, _reduced=True)


def rf_var(v: int) -> RationalFunction:
    return RationalFunction.var(v)


def rf_const(c) -> RationalFunction:
    return RationalFunction.const(c)


def substitute_mobius(f: RationalFunction, v: int, m) -> RationalFunction:
    """Compose ``f`` in slot ``v`` with the Mobius map ``m`` (anything with
    a, b, c, d entries: v -> (a v + b)/(c v + d))."""
    x = RationalFunction.var(v)
    g = (m.a * x + m.b) / (m.c * x + m.d)
    return f.substitute(v, g)


class Polynomial:
    """Multivariate polynomial with rational coefficients.

    Thin wrapper used where polynomials are results in their own right
    (the combinatorial polynomials); terms are exposed in deglex order.
    """

    __slots__ = ("rf",)

    def __init__(self, rf: RationalFunction):
        if not rf.is_polynomial():
            raise AlgebraError("not a polynomial")
        self.rf = rf

    @classmethod
    def const(cls, c):
        return cls(RationalFunction.const(c))

    @classmethod
    def var(cls, v: int):
        return cls(RationalFunction.var(v))

    def _wrap(self, other):
        if isinstance(other, Polynomial):
            return other.rf
        return RationalFunction.coerce(other)

    def __add__(self, o):
        return Polynomial(self.rf + self._wrap(o))

    __radd__ = __add__

    def __sub__(self, o):
        return Polynomial(self.rf - self._wrap(o))

    def __rsub__(self, o):
        return Polynomial(self._wrap(o) - self.rf)

    def __mul__(self, o):
        return Polynomial(self.rf * self._wrap(o))

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(-self.rf)

    def __eq__(self, o):
        if isinstance(o, (Polynomial, int, Fraction)):
            return self.rf == self._wrap(o)
        return NotImplemented

    def __hash__(self):
        return hash(self.rf)

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        den = int(self.rf.den.coefficient(0))
        return [(tuple(int(x) for x in e), Fraction(int(c), den)) for e, c in self.rf.num.terms()]

    def evaluate(self, values: Mapping[int, Fraction | int]) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms():
            t = c
            for i, e in enumerate(exps):
                if e:
                    t *= Fraction(values[i]) ** e
            total += t
        return total

    def substitute(self, v: int, g) -> "Polynomial":
        return Polynomial(self.rf.substitute(v, g.rf if isinstance(g, Polynomial) else g))

    def __str__(self):
        return str(self.rf)

    __repr__ = __str__


def rf_sum(items: Iterable[RationalFunction]) -> RationalFunction:
    """Sum with one common-denominator pass per distinct denominator."""
    groups: dict = {}
    for f in items:
        key = str(f.den)
        if key in groups:
            groups[key] = (groups[key][0] + f.num, f.den)
        else:
            groups[key] = (f.num, f.den)
    total = ZERO
    for n, d in groups.values():
        total = total + RationalFunction(n, d)
    return total
