"""Executable versions of the identities satisfied by the omega_n."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from ..algebra import (
    Q, QT, U1, W, Z, LogExtendedFunction, RationalFunction, ZERO, laurent_expand,
    primitive_from_infinity, residue_at, residue_with_logs, rf_const, rf_sum, rf_var,
)
from ..algebra.series import pole_order
from ..curve import Curve
from .forms import OmegaForm, set_partitions
from .recursion import W_at, kernels, omega_n


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: RationalFunction = ZERO
    detail: str = ""

    def witness(self) -> str:
        """Leading monomial of the residual numerator, for failure reports."""
        if self.residual.is_zero():
            return ""
        exps, c = next(iter(self.residual.num.terms()))
        from ..algebra.ratfunc import NAMES
        mono = "*".join(f"{NAMES[i]}^{e}" if e > 1 else NAMES[i] for i, e in enumerate(exps) if e)
        return f"{c}*{mono}" if mono else str(c)


def weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first, *rest)


def _slots(m: int) -> tuple[int, ...]:
    return tuple(range(U1, U1 + m))


def _y(curve, g):
    return curve.at(curve.y, g)


def _dx(curve, g):
    return curve.at(curve.dx(), g)


# involution identity

def flip_identity_residual(curve: Curve, n: int) -> RationalFunction:
    m = n - 1
    us = _slots(m)
    z, q = rf_var(Z), rf_var(Q)
    wn = omega_n(curve, n).coefficient
    iz = curve.iota.of(Z)
    lhs = wn + curve.iota.derivative(Z) * wn.substitute(Z, iz)
    dy = curve.y.diff(Z)
    terms = []
    for s in range(2, m + 1):
        base = dy * _dx(curve, q) ** (1 - s) / (_y(curve, z) - _y(curve, q)) ** s
        for p in set_partitions(us):
            if len(p) != s:
                continue
            prod = base
            for block in p:
                prod = prod * W_at(curve, Q, block)
            # (1/s) * s! orderings of each set partition
            terms.append(residue_at(prod, Q, z) * factorial(s - 1))
    return lhs - rf_sum(terms)


# projection and local operators

def project(f, v: int, p) -> RationalFunction:
    """Res_{q=p} f(q) / (v - q): the principal part of f at v = p."""
    if isinstance(f, OmegaForm):
        f = f.coefficient
    p = RationalFunction.coerce(p)
    scratch = _free_slot(f, p, avoid=(v,))
    g = f.rename({v: scratch}) / (rf_var(v) - rf_var(scratch))
    return residue_at(g, scratch, p)


def _free_slot(*fs, avoid=()):
    used = set(avoid)
    for f in fs:
        used |= RationalFunction.coerce(f).variables()
    for cand in (15, 14, 12, 11, 10):
        if cand not in used:
            return cand
    raise ValueError("no scratch variable available")


def nabla(curve: Curve, f: RationalFunction, n: int, u: int, qvar: int = Q) -> RationalFunction:
    """nabla^n f(iota u, ...) where f is a function of the slot qvar."""
    q = rf_var(qvar)
    iu = curve.iota.of(u)
    iq = curve.iota.of(qvar)
    den1 = _y(curve, q) - _y(curve, iu)
    den2 = _y(curve, iq) - _y(curve, rf_var(u))
    if pole_order(1 / den1, qvar, iu) != 1:
        raise ValueError("y(q) - y(iota u) has a zero of unexpected order at q = iota u")
    return residue_at(f / (den1 * den2 ** n), qvar, iu)


def coeff_b(curve: Curve, r: int, z: int = Z, u: int = W) -> RationalFunction:
    q = rf_var(Q)
    yy = _y(curve, curve.iota.of(Q)) - _y(curve, rf_var(u))
    return residue_at(1 / ((rf_var(z) - q) ** 2 * yy ** r), Q, curve.iota.of(u))


def coeff_a(curve: Curve, r: int, z: int = Z, u: int = W) -> RationalFunction:
    q = rf_var(Q)
    yy = _y(curve, curve.iota.of(Q)) - _y(curve, rf_var(u))
    y2 = _y(curve, curve.iota.of(u)) - _y(curve, q)
    return residue_at(1 / ((rf_var(z) - q) ** 2 * y2 * yy ** r), Q, curve.iota.of(u))


def check_generating_b(curve: Curve, order: int = 4) -> bool:
    """1/((z-q)^2 x'(q)) = -sum_r b_{r+1} (y(iota q) - y(u))^r near q = iota u."""
    q = rf_var(Q)
    iu = curve.iota.of(W)
    lhs = laurent_expand(1 / ((rf_var(Z) - q) ** 2 * _dx(curve, q)), Q, iu, order)
    Y = laurent_expand(_y(curve, curve.iota.of(Q)) - _y(curve, rf_var(W)), Q, iu, order)
    rhs = laurent_expand(rf_const(0), Q, iu, order)
    pw = laurent_expand(rf_const(1), Q, iu, order)
    for r in range(order + 1):
        rhs = rhs - pw.scale(coeff_b(curve, r + 1))
        pw = pw * Y
    return all(lhs.coefficient(k) == rhs.coefficient(k) for k in range(order + 1))


def check_taylor_nabla(curve: Curve, f: RationalFunction, order: int = 4) -> bool:
    """(y(iota q)-y(u))/(y(iota u)-y(q)) f(q)/x'(q) = sum_n Y^n nabla^n f at q = iota u."""
    q = rf_var(Q)
    iu = curve.iota.of(W)
    Yq = _y(curve, curve.iota.of(Q)) - _y(curve, rf_var(W))
    lhs = laurent_expand(Yq / (_y(curve, iu) - _y(curve, q)) * f / _dx(curve, q), Q, iu, order)
    Y = laurent_expand(Yq, Q, iu, order)
    rhs = laurent_expand(rf_const(0), Q, iu, order)
    pw = laurent_expand(rf_const(1), Q, iu, order)
    for k in range(order + 1):
        rhs = rhs + pw.scale(nabla(curve, f, k, W))
        pw = pw * Y
    return all(lhs.coefficient(k) == rhs.coefficient(k) for k in range(order + 1))


# lemma checks

class _NablaCache:
    def __init__(self, curve, u):
        self.curve, self.u, self.data = curve, u, {}

    def __call__(self, block, n):
        key = (tuple(block), n)
        if key not in self.data:
            self.data[key] = nabla(self.curve, W_at(self.curve, Q, block), n, self.u)
        return self.data[key]


def involution_expand_sides(curve: Curve, m: int):
    us = _slots(m)
    u = W
    lhs = W_at(curve, u, us) / _dx(curve, rf_var(u))
    nab = _NablaCache(curve, u)
    terms = []
    for p in set_partitions(us):
        r = len(p)
        acc = []
        for ns in weak_compositions(r - 1, r):
            prod = rf_const(1)
            for block, k in zip(p, ns):
                prod = prod * nab(block, k)
            acc.append(prod)
        # (1/r) * r! orderings; the n-sum is symmetric under reordering
        terms.append(rf_sum(acc) * factorial(r - 1))
    return lhs, rf_sum(terms)


def check_involution_expand(curve: Curve, m: int) -> CheckResult:
    lhs, rhs = involution_expand_sides(curve, m)
    return CheckResult(f"involution-expand |I|={m}", lhs == rhs, lhs - rhs)


def resk_sides(curve: Curve, m: int):
    us = _slots(m)
    z2, q = rf_var(Z), rf_var(Q)
    _, kt = kernels(curve)
    kern = kt.expression.rename({W: QT})
    iqt = curve.iota.of(QT)
    lhs = LogExtendedFunction()
    for mask in range(0, (1 << m) - 1):
        a = tuple(u for i, u in enumerate(us) if mask >> i & 1)
        b = tuple(u for i, u in enumerate(us) if not mask >> i & 1)
        w = W_at(curve, QT, (Q, *a))
        lhs = lhs + residue_with_logs(kern * W_at(curve, Q, b) * 2,
                                      primitive_from_infinity(w, QT), Q, iqt)
    lhs = lhs.to_rational()
    yy = _y(curve, iqt) - _y(curve, q)
    fac = 1 / (_dx(curve, q) * yy)
    acc = []
    for p in set_partitions(us):
        s = len(p)
        prod = rf_const(factorial(s - 1)) / (z2 - q) ** 2
        for block in p:
            prod = prod * W_at(curve, Q, block) * fac
        acc.append(residue_at(prod, Q, iqt))
    rhs = rf_sum(acc)
    return lhs, rhs


def check_resk_lemma(curve: Curve, m: int) -> CheckResult:
    lhs, rhs = resk_sides(curve, m)
    return CheckResult(f"ResK lemma |I|={m}", lhs == rhs, lhs - rhs)


def ahp_sides(curve: Curve, m: int):
    """Both sides of the projection identity at z = iota u, u in slot W."""
    us = _slots(m)
    u = rf_var(W)
    iu = curve.iota.of(W)
    lhs = project(W_at(curve, Z, (W, *us)), Z, iu)
    yi = _y(curve, curve.iota.of(Z))
    dyi = yi.diff(Z)
    acc = []
    for p in set_partitions(us):
        s = len(p)
        prod = rf_const(factorial(s)) * dyi / (yi - _y(curve, u)) ** (s + 1)
        for block in p:
            prod = prod * W_at(curve, W, block) / _dx(curve, u)
        acc.append(prod)
    inner = -rf_sum(acc).diff(W)
    rhs = project(inner, Z, iu)
    return lhs, rhs


def check_ahp_pole(curve: Curve, m: int) -> CheckResult:
    lhs, rhs = ahp_sides(curve, m)
    return CheckResult(f"AHP projection |I|={m}", lhs == rhs, lhs - rhs)


def final_cancellation(curve: Curve, m: int, k: int, l: int) -> RationalFunction:
    """(*) - (**) for fixed (k, l); zero iff the prefactors cancel."""
    if l < 1 or k < 0:
        raise ValueError("need l >= 1 and k >= 0")
    us = _slots(m)
    u = W
    nab = _NablaCache(curve, u)
    wx = {}

    def w_over_dx(block):
        if block not in wx:
            wx[block] = W_at(curve, u, block) / _dx(curve, rf_var(u))
        return wx[block]

    star = []
    for p in set_partitions(us):
        r = len(p)
        if r < k + l:
            continue
        # ordered J_1..J_r: first r-l blocks carry nabla, last l carry omega/dx;
        # count orderings within each group explicitly
        weight = factorial(r - l) * factorial(l)
        for wblocks in itertools.combinations(range(r), l):
            nb = [p[i] for i in range(r) if i not in wblocks]
            prod_w = rf_const(1)
            for i in wblocks:
                prod_w = prod_w * w_over_dx(p[i])
            acc = []
            for ms in weak_compositions(r - k - l, r - l):
                prod = prod_w
                for block, mm in zip(nb, ms):
                    prod = prod * nab(block, mm)
                acc.append(prod)
            star.append(rf_sum(acc) * weight)
    dstar = []
    for p in set_partitions(us):
        s = len(p)
        if s < k + l:
            continue
        acc = []
        for ns in weak_compositions(s - k - l, s):
            prod = rf_const(1)
            for block, nn in zip(p, ns):
                prod = prod * nab(block, nn)
            acc.append(prod)
        dstar.append(rf_sum(acc) * factorial(s))
    return rf_sum(star) - rf_sum(dstar)


def check_final_cancellation(curve: Curve, m: int, k: int, l: int) -> CheckResult:
    res = final_cancellation(curve, m, k, l)
    return CheckResult(f"final cancellation |I|={m} (k,l)=({k},{l})", res.is_zero(), res)


def admissible_kl(m: int):
    return [(k, l) for l in range(1, m + 1) for k in range(0, m - l + 1)]


# symmetry and holomorphy

def check_symmetry(curve: Curve, n: int) -> CheckResult:
    w = omega_n(curve, n)
    for perm in itertools.permutations(range(n)):
        g = w.permuted(perm)
        if g != w.coefficient:
            return CheckResult(f"symmetry n={n}", False, g - w.coefficient, f"permutation {perm}")
    return CheckResult(f"symmetry n={n}", True)


def principal_parts(curve: Curve, n: int) -> dict:
    """Principal parts of omega_n in z at each u_k and each iota(beta_i)."""
    w = omega_n(curve, n).coefficient
    out = {}
    for k in range(1, n):
        ser = laurent_expand(w, Z, rf_var(U1 + k - 1), -1)
        out[f"u{k}"] = ser.principal_part()
    for rp in curve.ramification_points:
        ib = curve.iota.apply(rp.beta)
        ser = laurent_expand(w, Z, rf_const(ib), -1)
        out[f"iota(beta={rp.beta})"] = ser.principal_part()
    return out


def check_holomorphy(curve: Curve, n: int) -> CheckResult:
    parts = principal_parts(curve, n)
    bad = {k: v for k, v in parts.items() if not v.is_zero()}
    if n < 4:
        # only recorded for n = 3; the holomorphicity clause needs |I| >= 2
        bad = {k: v for k, v in bad.items() if not k.startswith("u")}
    if bad:
        key = sorted(bad)[0]
        return CheckResult(f"holomorphy n={n}", False, bad[key], f"pole at {key}")
    return CheckResult(f"holomorphy n={n}", True)
