"""Floating point cross-checks: contour residues and a numeric run of the recursion.

Nothing here calls the exact residue engine.  The curve is turned into numpy
coefficient arrays, residues are trapezoid sums on circles, sigma comes from
polynomial roots and primitives from adaptive quadrature along a ray.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy.integrate import quad_vec

from .algebra import Z, RationalFunction
from .curve import Curve
from .omega import omega_n, ordered_pairs

log = logging.getLogger(__name__)


class ContourError(RuntimeError):
    pass


def contour_residue(f: Callable, center: complex, radius: float, nodes: int = 16,
                    tol: float = 1e-10, max_nodes: int = 2 ** 14) -> complex:
    """(1/2 pi i) times the integral of f over |z - center| = radius.

    f takes an array of points.  Nodes double until two successive values
    agree to ``tol`` relative to the integrand scale."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if nodes < 16:
        raise ValueError("at least 16 nodes")
    prev = None
    n = nodes
    while n <= max_nodes:
        theta = 2 * np.pi * np.arange(n) / n
        e = radius * np.exp(1j * theta)
        vals = np.asarray(f(center + e), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise ContourError("integrand is not finite on the contour")
        # dz = i e dtheta, so (1/2 pi i) sum f i e (2 pi / n)
        val = np.mean(vals * e)
        scale = max(np.max(np.abs(vals)) * radius, 1e-300)
        if prev is not None and abs(val - prev) <= tol * max(abs(val), scale * 1e-3):
            return complex(val)
        prev = val
        n *= 2
    raise ContourError(f"contour residue did not converge with {max_nodes} nodes")


def isolation_radius(center: complex, others: Sequence[complex], cap: float = 0.5) -> float:
    """Half the distance to the nearest other singularity."""
    d = [abs(complex(o) - center) for o in others]
    d = [x for x in d if x > 1e-12]
    return min([cap] + [x / 2 for x in d])


def _ints(p) -> np.ndarray:
    """Ascending integer coefficients of a univariate polynomial in slot z."""
    d = p.to_dict()
    deg = max((e[Z] for e in d), default=0)
    out = np.zeros(deg + 1)
    for e, c in d.items():
        out[e[Z]] = float(int(c))
    return out


@dataclass
class NumericCurve:
    xn: np.ndarray          # descending coefficients, numpy poly convention
    xd: np.ndarray
    a: float
    b: float
    c: float
    betas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    poles: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @classmethod
    def from_curve(cls, curve: Curve) -> "NumericCurve":
        xn = _ints(curve.x.num)[::-1]
        xd = _ints(curve.x.den)[::-1]
        nc = cls(xn, xd, float(curve.iota.a), float(curve.iota.b), float(curve.iota.c))
        crit = np.polysub(np.polymul(np.polyder(xn), xd), np.polymul(xn, np.polyder(xd)))
        crit = np.trim_zeros(crit, "f")
        roots = np.roots(crit) if len(crit) > 1 else np.zeros(0)
        poles = np.roots(xd) if len(xd) > 1 else np.zeros(0)
        nc.poles = poles
        nc.betas = np.array([r for r in roots if np.all(np.abs(poles - r) > 1e-8)])
        return nc

    def x(self, w):
        return np.polyval(self.xn, w) / np.polyval(self.xd, w)

    def dx(self, w):
        n, d = np.polyval(self.xn, w), np.polyval(self.xd, w)
        return (np.polyval(np.polyder(self.xn), w) * d - n * np.polyval(np.polyder(self.xd), w)) / d ** 2

    def iota(self, w):
        return (self.a * w + self.b) / (self.c * w - self.a)

    def diota(self, w):
        return -(self.a ** 2 + self.b * self.c) / (self.c * w - self.a) ** 2

    def y(self, w):
        return -self.x(self.iota(w))

    def dy(self, w):
        return -self.dx(self.iota(w)) * self.diota(w)

    def fibre(self, w) -> np.ndarray:
        """All solutions v of x(v) = x(w)."""
        xv = self.x(w)
        return np.roots(np.polysub(self.xn, xv * self.xd) if len(self.xn) >= len(self.xd)
                        else np.polysub(xv * self.xd, self.xn))

    def sigma(self, q: np.ndarray, beta: complex) -> np.ndarray:
        """Other sheet of x near beta: the root of x(v) = x(q) closest to 2 beta - q."""
        q = np.atleast_1d(q)
        out = np.empty(q.shape, dtype=complex)
        for i, qi in enumerate(q):
            r = self.fibre(qi)
            out[i] = r[np.argmin(np.abs(r - (2 * beta - qi)))]
        return out

    def omega2(self, first, second):
        return 1 / (first - second) ** 2 - self.diota(second) / (first - self.iota(second)) ** 2


def exact_value(rf: RationalFunction, point: Sequence[complex], dps: int = 40) -> complex:
    """Value of an exact rational function at a float point, evaluated with
    enough working precision that the expanded form does not cancel badly."""
    with mpmath.workdps(dps):
        pt = [mpmath.mpc(p) for p in point]

        def ev(poly):
            total = mpmath.mpc(0)
            for exps, c in poly.to_dict().items():
                t = mpmath.mpf(int(c))
                for i, e in enumerate(exps):
                    if e:
                        t *= pt[i] ** int(e)
                total += t
            return total

        return complex(ev(rf.num) / ev(rf.den))


class NumericOmega:
    """omega_n for n <= 3 evaluated by running the recursion with numeric
    residues.  n = 2 is the closed form and every ingredient of n = 3 is
    numeric.  Higher n would need the lower forms either from the exact
    engine or from nested quadrature, so they are not offered."""

    MAX_N = 3

    def __init__(self, curve: Curve, tol: float = 1e-10):
        self.curve = curve
        self.nc = NumericCurve.from_curve(curve)
        self.tol = tol

    def W(self, first, rest: Sequence):
        if len(rest) != 1:
            raise ValueError("only omega_2 is available as a lower form")
        return self.nc.omega2(first, rest[0])

    def primitive(self, q: np.ndarray, uk: complex) -> np.ndarray:
        """Integral from infinity to uk of omega_2(q, u') du', one value per node q.

        Each node gets its own ray, the one of 24 directions that stays
        furthest from the poles u' = q and u' = iota q."""
        nc = self.nc
        q = np.atleast_1d(q)
        poles = np.stack([q, nc.iota(q)], axis=1)
        angles = np.exp(2j * np.pi * np.arange(24) / 24)
        rel = poles[:, None, :] - uk                          # node x 1 x pole
        proj = rel * np.conj(angles)[None, :, None]            # node x dir x pole
        dist = np.where(proj.real < 0, np.abs(rel), np.abs(proj.imag))
        best = angles[np.argmax(dist.min(axis=2), axis=1)]

        def integrand(t):
            v = nc.omega2(q, uk + t * best) * best
            return np.concatenate([v.real, v.imag])

        val, _ = quad_vec(integrand, 0, np.inf, epsabs=1e-14, epsrel=1e-12, limit=4000)
        n = len(q)
        return -(val[:n] + 1j * val[n:])

    def __call__(self, point: Sequence[complex]) -> complex:
        point = [complex(p) for p in point]
        n = len(point)
        if not 2 <= n <= self.MAX_N:
            raise ValueError(f"numeric recursion is available for 2 <= n <= {self.MAX_N}")
        if n == 2:
            return complex(self.nc.omega2(point[0], point[1]))
        z, us = point[0], point[1:]
        return self._ramification_line(z, us) - self._iota_line(z, us)

    def _singular_set(self, z, us) -> list:
        nc = self.nc
        base = [z, nc.iota(z)] + list(us) + [nc.iota(u) for u in us] + list(nc.betas) + list(nc.poles)
        # poles of y
        base += [nc.iota(p) for p in nc.poles if nc.c == 0 or abs(nc.c * p - nc.a) > 1e-12]
        if nc.c != 0:
            base.append(nc.a / nc.c)
        out = list(base)
        for s in [z] + list(us) + [nc.iota(u) for u in us]:
            out += list(nc.fibre(s))
        return out

    def _ramification_line(self, z, us) -> complex:
        nc = self.nc
        total = 0j
        sing = self._singular_set(z, us)
        for beta in nc.betas:
            others = [b for b in nc.betas if abs(b - beta) > 1e-9]
            extra = []
            for b in others:
                extra += list(nc.fibre(b))
            r = isolation_radius(beta, sing + extra + others)

            def f(q, beta=beta):
                s = nc.sigma(q, beta)
                K = 0.5 * (1 / (z - q) - 1 / (z - s)) / (nc.dx(s) * (nc.y(q) - nc.y(s)))
                acc = 0
                for a, b in ordered_pairs(us):
                    acc = acc + self.W(q, a) * self.W(s, b)
                return K * acc

            total += contour_residue(f, beta, r, tol=self.tol)
        return total

    def _iota_line(self, z, us) -> complex:
        nc = self.nc
        iz, diz = nc.iota(z), nc.diota(z)
        total = 0j
        for k, uk in enumerate(us):
            rest = [u for j, u in enumerate(us) if j != k]
            c = nc.iota(uk)
            sing = [p for p in self._singular_set(z, us) if abs(p - c) > 1e-9]
            sing += [nc.iota(v) for v in nc.fibre(uk)]
            r = isolation_radius(c, sing)
            yiu, dyiu = nc.y(c), nc.dy(c) * nc.diota(uk)
            # with |I| = 2 the only split is A = {u_k}, B = the other u;
            # d/du_k is taken under a contour that stays fixed near u_k
            def f(q):
                den = nc.dx(q) * (nc.y(q) - yiu)
                bracket = 1 / (iz - nc.iota(q)) - 1 / (iz - uk)
                kt = 0.5 * diz * bracket / den
                dkt = 0.5 * diz * (-1 / (iz - uk) ** 2) / den + kt * dyiu / (nc.y(q) - yiu)
                wb = self.W(q, rest)
                return 2 * (dkt * wb * self.primitive(q, uk) + kt * wb * self.W(q, (uk,)))

            total += contour_residue(f, c, r, tol=self.tol)
        return total


@dataclass
class CrossCheckReport:
    n: int
    samples: int
    tol: float
    max_deviation: float
    points: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def as_dict(self) -> dict:
        return {"n": self.n, "samples": self.samples, "tol": self.tol,
                "maxDeviation": self.max_deviation, "passed": self.passed}


def sample_points(curve: Curve, n: int, count: int, seed: int = 0,
                  clearance: float = 0.25) -> list:
    """Random points in the annulus 0.5 <= |z| <= 3 kept away from the
    ramification data, from each other and from each other's iota images."""
    nc = NumericCurve.from_curve(curve)
    fixed = list(nc.betas) + [nc.iota(b) for b in nc.betas] + list(nc.poles)
    if nc.c != 0:
        fixed.append(nc.a / nc.c)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        pt = []
        tries = 0
        while len(pt) < n and tries < 1000:
            tries += 1
            rad = rng.uniform(0.5, 3.0)
            w = rad * np.exp(2j * np.pi * rng.uniform())
            if nc.c != 0 and abs(nc.c * w - nc.a) < 1e-3:
                continue
            near = fixed + pt + [nc.iota(p) for p in pt]
            if all(abs(w - p) > clearance for p in near) and abs(nc.iota(w) - w) > clearance:
                pt.append(w)
        if len(pt) == n:
            out.append(tuple(pt))
    return out


def cross_check_omega(curve: Curve, n: int, samples: int = 20, tol: float = 1e-9,
                      seed: int = 0) -> CrossCheckReport:
    if not 2 <= n <= NumericOmega.MAX_N:
        raise ValueError(f"numeric recursion is available for 2 <= n <= {NumericOmega.MAX_N}")
    exact = omega_n(curve, n).coefficient
    numeric = NumericOmega(curve)
    rep = CrossCheckReport(n, samples, tol, 0.0)
    for i, pt in enumerate(sample_points(curve, n, samples, seed)):
        ex = exact_value(exact, pt)
        nu = numeric(pt)
        dev = abs(nu - ex) / max(abs(ex), 1e-300)
        log.info("sample %d: deviation %.3g", i, dev)
        rep.points.append((pt, ex, nu, dev))
        rep.max_deviation = max(rep.max_deviation, dev)
    return rep


def symmetry_spot_check(curve: Curve, samples: int = 5, tol: float = 1e-9, seed: int = 1) -> float:
    """max relative gap between numeric omega_3(p1,p2,p3) and omega_3(p3,p1,p2)."""
    numeric = NumericOmega(curve)
    worst = 0.0
    for p in sample_points(curve, 3, samples, seed):
        a = numeric(p)
        b = numeric((p[2], p[0], p[1]))
        worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    return worst
