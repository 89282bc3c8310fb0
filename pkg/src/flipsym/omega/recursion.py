"""The residue recursion producing omega_n from omega_2."""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from ..algebra import (
    Q, U1, W, Z, LogExtendedFunction, RationalFunction, UnsupportedLogError,
    laurent_expand, primitive_from_infinity, residue_at, residue_with_logs,
    rf_const, rf_sum, rf_var,
)
from ..algebra.series import LaurentSeries
from ..curve import Curve, CurveError, RamificationPoint, _series_sigma
from .forms import OmegaForm, canonical_slots, omega2, ordered_pairs

log = logging.getLogger(__name__)


class OmegaError(Exception):
    pass


class _Memo:
    """Insert-once table shared by all computations."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


_MEMO = _Memo()


def clear_cache():
    _MEMO.clear()


@dataclass(frozen=True)
class KernelK:
    index: int
    beta: object
    expression: RationalFunction | None   # exact case, in (z, q)


@dataclass(frozen=True)
class KernelKtilde:
    expression: RationalFunction          # in (z, q, w), w standing for u


def kernels(curve: Curve):
    key = (curve.fingerprint, "kernels")
    got = _MEMO.get(key)
    if got is not None:
        return got
    z, q = rf_var(Z), rf_var(Q)
    ks = []
    for i, rp in enumerate(curve.ramification_points):
        if rp.galois_exact is None:
            ks.append(KernelK(i, rp.beta, None))
            continue
        sig = rp.galois_exact
        gap = curve.at(curve.y, q) - curve.at(curve.y, sig)
        if gap.is_zero():
            raise CurveError("y(q) - y(sigma(q)) vanishes identically")
        expr = rf_const(1) / 2 * (1 / (z - q) - 1 / (z - sig)) / (curve.at(curve.dx(), sig) * gap)
        ks.append(KernelK(i, rp.beta, expr))
    iz, iq = curve.iota.of(Z), curve.iota.of(Q)
    u = rf_var(W)
    kt = (rf_const(1) / 2 * curve.iota.derivative(Z) * (1 / (iz - iq) - 1 / (iz - u))
          / (curve.at(curve.dx(), q) * (curve.at(curve.y, q) - curve.at(curve.y, curve.iota.of(W)))))
    return _MEMO.put(key, (tuple(ks), KernelKtilde(kt)))


def omega_n(curve: Curve, n: int) -> OmegaForm:
    if n < 2:
        raise ValueError("n must be at least 2")
    key = (curve.fingerprint, "omega", n)
    got = _MEMO.get(key)
    if got is not None:
        return got
    if n == 2:
        return _MEMO.put(key, omega2(curve))
    for k in range(2, n):
        omega_n(curve, k)
    log.info("computing omega_%d", n)
    us = tuple(range(U1, U1 + n - 1))
    line1 = _ramification_line(curve, us)
    line2 = _iota_line(curve, us)
    coef = line1 - line2
    return _MEMO.put(key, OmegaForm(n, canonical_slots(n), coef))


def W_at(curve: Curve, first, rest) -> RationalFunction:
    """omega_{|rest|+1}(first, rest) with variables given as slots."""
    return omega_n(curve, len(rest) + 1).at(first, rest)


def _ramification_line(curve: Curve, us) -> RationalFunction:
    ks, _ = kernels(curve)
    total = []
    for k, rp in zip(ks, curve.ramification_points):
        if k.expression is not None:
            sig = rp.galois_exact
            beta = rf_const(rp.beta)
            # residues term by term: summing first builds one huge
            # denominator whose gcd dominates the cost
            for a, b in ordered_pairs(us):
                prod = W_at(curve, Q, a) * W_at(curve, Q, b).substitute(Q, sig)
                total.append(residue_at(k.expression * prod, Q, beta))
        else:
            total.append(ramification_residue_series(curve, rp, us))
        log.debug("ramification point %s done", rp.beta)
    return rf_sum(total)


def _primitive(curve: Curve, m: int, j: int) -> LogExtendedFunction:
    """d^{-1} in slot j of omega_{m+1}(slot0, ..., slot m)."""
    key = (curve.fingerprint, "prim", m, j)
    got = _MEMO.get(key)
    if got is not None:
        return got
    w = omega_n(curve, m + 1)
    return _MEMO.put(key, primitive_from_infinity(w.coefficient, w.variables[j]))


def _iota_line(curve: Curve, us) -> RationalFunction:
    _, kt = kernels(curve)
    out = []
    for uk in us:
        others = [u for u in us if u != uk]
        kern = kt.expression.rename({W: uk}) * 2
        iu = curve.iota.of(uk)
        res = LogExtendedFunction()
        # ordered sum = 2 * sum over A containing u_k, A != I
        for mask in range(0, (1 << len(others)) - 1):
            rest_a = [u for i, u in enumerate(others) if mask >> i & 1]
            rest_b = tuple(u for i, u in enumerate(others) if not mask >> i & 1)
            a = (uk, *rest_a)
            prim = _primitive(curve, len(a), 1)
            prim = prim.rename(dict(zip(range(len(a) + 1), (Q, *a))))
            res = res + residue_with_logs(kern * W_at(curve, Q, rest_b), prim, Q, iu)
        d = res.differentiate(uk)
        try:
            out.append(d.to_rational())
        except UnsupportedLogError:
            raise OmegaError("log terms survived in the recursion") from None
    return rf_sum(out)


# series path for ramification points without a global deck transformation

_SIGMA_CACHE: dict = {}
_SIGMA_LOCK = threading.Lock()


def sigma_series(curve: Curve, rp: RamificationPoint, order: int) -> LaurentSeries:
    key = (curve.fingerprint, rp.beta)
    with _SIGMA_LOCK:
        s = _SIGMA_CACHE.get(key)
    if s is None or s.trunc < order:
        s = _series_sigma(curve, rp.beta, order)
        with _SIGMA_LOCK:
            _SIGMA_CACHE[key] = s
    return s.truncate(order)


def ramification_residue_series(curve: Curve, rp: RamificationPoint, us, order: int | None = None,
                                kernel_only: bool = False) -> RationalFunction:
    """Res_{q=beta} K(z,q) sum W(q,A) W(sigma q, B) through sigma series."""
    b = rf_const(rp.beta)
    z, q = rf_var(Z), rf_var(Q)
    if order is None:
        order = 6
    for _ in range(12):
        s = sigma_series(curve, rp, order)

        def at_q(f):
            return laurent_expand(f, Q, b, order)

        def at_s(f):
            return laurent_expand(f, Q, b, order).compose(s)

        y = curve.at(curve.y, q)
        K = (at_q(1 / (z - q)) - at_s(1 / (z - q))).scale(rf_const(1) / 2)
        K = K * (at_s(curve.at(curve.dx(), q)) * (at_q(y) - at_s(y))).inverse()
        S = None
        for a, bb in ordered_pairs(us):
            term = at_q(W_at(curve, Q, a)) * at_s(W_at(curve, Q, bb))
            S = term if S is None else S + term
        total = K * S
        if total.trunc >= -1:
            return total.coefficient(-1)
        order += 4
    raise OmegaError("series residue did not reach the required precision")
