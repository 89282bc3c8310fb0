"""Integer partition identity behind the symmetry of the omega_n."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import Polynomial

Partition = tuple  # weakly decreasing tuple of positive ints


@lru_cache(maxsize=None)
def enumerate_partitions(k: int, n: int, largest: int | None = None) -> tuple:
    """All partitions of n into exactly k parts, decreasing lexicographic order."""
    if largest is None:
        largest = n
    if k == 0:
        return ((),) if n == 0 else ()
    if n < k:
        return ()
    out = []
    # the first part is at most `largest` and leaves at least 1 for each other part
    for first in range(min(largest, n - (k - 1)), 0, -1):
        if first * k < n:
            break
        for rest in enumerate_partitions(k - 1, n - first, first):
            out.append((first, *rest))
    return tuple(out)


def count_partitions(k: int, n: int) -> int:
    """Independent count of P_k(n) via p(n, k) = p(n-1, k-1) + p(n-k, k)."""
    @lru_cache(maxsize=None)
    def p(n, k):
        if n == 0 and k == 0:
            return 1
        if n <= 0 or k <= 0:
            return 0
        return p(n - 1, k - 1) + p(n - k, k)
    return p(n, k)


def multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total or any(p < 0 for p in parts):
        return 0
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def partition_multinomial(nu: Sequence[int], blocks: Sequence[Sequence[int]]) -> int:
    """prod over part sizes of multinomial(h_k; g_k1, ..., g_kl)."""
    h = Counter(nu)
    gs = [Counter(b) for b in blocks]
    sizes = set(h)
    for g in gs:
        sizes |= set(g)
    out = 1
    for k in sizes:
        out *= multinomial(h.get(k, 0), [g.get(k, 0) for g in gs])
        if out == 0:
            return 0
    return out


@dataclass(frozen=True)
class IdentityInstance:
    s: int
    k: int
    l: int
    nu: tuple

    def __post_init__(self):
        nu = tuple(sorted(self.nu, reverse=True))
        object.__setattr__(self, "nu", nu)
        if self.k < 0 or self.l < 0 or self.s < max(self.k + self.l, 1):
            raise ValueError("need k, l >= 0 and s >= max(k+l, 1)")
        if len(nu) != self.s or sum(nu) != 2 * self.s - self.k - self.l or min(nu) < 1:
            raise ValueError(f"nu must lie in P_{self.s}({2 * self.s - self.k - self.l})")


def _compositions(total: int, parts: int, minimum: int = 1):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first, *rest)


def identity_rhs(inst: IdentityInstance, fast: bool = False) -> int:
    """Right side of the partition identity; equals s! when the theorem holds.

    The free sum runs every rho_i over P_{p_i}(2 p_i - 1); the fast path fixes
    the last block as the complement, where the multinomial is supported."""
    s, k, l, nu = inst.s, inst.k, inst.l, inst.nu
    total = 0
    for rl in range(k, s - l + 1):
        r = rl + l
        for ps in _compositions(s - rl, l):
            weight = factorial(rl)
            for p in ps:
                weight *= factorial(p - 1)
            for mu in enumerate_partitions(rl, 2 * r - k - 2 * l):
                if fast:
                    total += weight * _complement_sum(nu, [mu], ps)
                    continue
                rhos = [enumerate_partitions(p, 2 * p - 1) for p in ps]
                for choice in itertools.product(*rhos):
                    total += weight * partition_multinomial(nu, [mu, *choice])
    return total


def _remove(nu: Counter, part) -> Counter | None:
    c = Counter(part)
    out = nu.copy()
    for k, v in c.items():
        if out[k] < v:
            return None
        out[k] -= v
    return out


def _complement_sum(nu, fixed, ps) -> int:
    if not ps:
        return partition_multinomial(nu, fixed) if sum(map(sum, fixed)) == sum(nu) else 0
    rest = Counter(nu)
    for b in fixed:
        rest = _remove(rest, b)
        if rest is None:
            return 0
    total = 0
    *head, last = ps
    for choice in itertools.product(*[enumerate_partitions(p, 2 * p - 1) for p in head]):
        r = rest
        for b in choice:
            r = _remove(r, b)
            if r is None:
                break
        if r is None:
            continue
        comp = tuple(sorted(r.elements(), reverse=True))
        if len(comp) == last and sum(comp) == 2 * last - 1:
            total += partition_multinomial(nu, [*fixed, *choice, comp])
    return total


@dataclass(frozen=True)
class ReformulationInstance:
    k: int
    l: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if self.k < 0 or self.l < 0 or any(x < 2 for x in self.a):
            raise ValueError("need k, l >= 0 and all a_j >= 2")

    @property
    def s(self) -> int:
        return self.k + self.l + sum(x - 1 for x in self.a)

    @property
    def nu(self) -> tuple:
        parts = list(self.a) + [1] * (self.k + self.l + sum(x - 2 for x in self.a))
        return tuple(sorted(parts, reverse=True))


def reformulation_rhs(inst: ReformulationInstance) -> int:
    """Sum over splits I_0 + I_1 + ... + I_l = {1..N} (empty blocks allowed)."""
    k, l, a = inst.k, inst.l, inst.a
    top = k + l + sum(x - 2 for x in a)
    total = 0
    for assign in itertools.product(range(l + 1), repeat=len(a)):
        s2 = [0] * (l + 1)
        s1 = [0] * (l + 1)
        for x, blk in zip(a, assign):
            s2[blk] += x - 2
            s1[blk] += x - 1
        parts = [k + s2[0]] + [1 + s2[i] for i in range(1, l + 1)]
        term = multinomial(top, parts) * factorial(k + s1[0])
        for i in range(1, l + 1):
            term *= factorial(s1[i])
        total += term
    return total


def structure_decompose(nu: Sequence[int], kl: int) -> tuple:
    """Parts >= 2 of nu, after checking the bookkeeping of the structure lemma."""
    nu = tuple(sorted(nu, reverse=True))
    a = tuple(x for x in nu if x >= 2)
    ones = sum(1 for x in nu if x == 1)
    s = len(nu)
    if ones != kl + sum(x - 2 for x in a) or kl + sum(x - 1 for x in a) != s:
        raise ValueError(f"partition {nu} is not in P_s(2s-{kl})")
    return a


def check_l1_lemma(k: int, a: Sequence[int]) -> bool:
    """(1 + k + sum(a_j - 1))! as the two-block split sum (l = 1 reformulation)."""
    inst = ReformulationInstance(k, 1, tuple(a))
    return reformulation_rhs(inst) == factorial(1 + k + sum(x - 1 for x in a))


# the polynomial identity for l = 1

def _factorial_ratio(S: Polynomial, top: int, bottom: int) -> Polynomial:
    """(S + top)! / (S + bottom)! as an explicit product; only polynomial when
    top >= bottom, or when S is the zero polynomial."""
    if top >= bottom:
        out = Polynomial.const(1)
        for i in range(bottom + 1, top + 1):
            out = out * (S + i)
        return out
    if not S.is_zero():
        raise ValueError("factorial ratio is not a polynomial")
    den = 1
    for i in range(top + 1, bottom + 1):
        den *= i
    return Polynomial.const(Fraction(1, den))


def _bsum(idx) -> Polynomial:
    out = Polynomial.const(0)
    for i in idx:
        out = out + Polynomial.var(i)
    return out


@lru_cache(maxsize=None)
def poly_lm(M: int) -> Polynomial:
    """(1 + M + S)! / (2 + S)! with S = b_1 + ... + b_M (slots 0..M-1)."""
    S = _bsum(range(M))
    return _factorial_ratio(S, 1 + M, 2)


@lru_cache(maxsize=None)
def poly_rm(M: int) -> Polynomial:
    """1/2 sum over ordered splits I + J of (|I| + S_I)!/(1 + S_I)! (|J| + S_J)!/(1 + S_J)!."""
    total = Polynomial.const(0)
    for mask in range(1 << M):
        I = [i for i in range(M) if mask >> i & 1]
        J = [i for i in range(M) if not mask >> i & 1]
        total = total + _factorial_ratio(_bsum(I), len(I), 1) * _factorial_ratio(_bsum(J), len(J), 1)
    return total * Fraction(1, 2)


def difference_equation_holds(poly_fn, M: int, point: Sequence[int]) -> bool:
    """P_M(b) - P_M(b - e_M) = sum_{i<M} P_{M-1}(.., b_i + b_M, ..)."""
    P = poly_fn(M)
    b = list(point)
    lhs = P.evaluate(dict(enumerate(b))) - P.evaluate(dict(enumerate(b[:-1] + [b[-1] - 1])))
    rhs = Fraction(0)
    if M >= 2:
        P1 = poly_fn(M - 1)
        for i in range(M - 1):
            c = b[:-1]
            c[i] += b[-1]
            rhs += P1.evaluate(dict(enumerate(c)))
    return lhs == rhs


@dataclass
class IdentityReport:
    s_max: int
    instance_count: int = 0
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"sMax": self.s_max, "instanceCount": self.instance_count,
                "failures": sorted(self.failures)}


def instances(s_max: int):
    for s in range(1, s_max + 1):
        for l in range(0, s + 1):
            for k in range(0, s - l + 1):
                for nu in enumerate_partitions(s, 2 * s - k - l):
                    yield IdentityInstance(s, k, l, nu)


def exhaustive_identity_check(s_max: int, reformulation: bool = True) -> IdentityReport:
    rep = IdentityReport(s_max)
    for inst in instances(s_max):
        rep.instance_count += 1
        rep.counts[inst.s] = rep.counts.get(inst.s, 0) + 1
        target = factorial(inst.s)
        got = identity_rhs(inst)
        if got != target:
            rep.failures.append((inst.s, inst.k, inst.l, inst.nu, "identity", got))
        if reformulation:
            a = structure_decompose(inst.nu, inst.k + inst.l)
            ref = reformulation_rhs(ReformulationInstance(inst.k, inst.l, a))
            if ref != target:
                rep.failures.append((inst.s, inst.k, inst.l, inst.nu, "reformulation", ref))
    return rep


def poly_identity_check(m_max: int, points: int = 50, seed: int = 0) -> dict:
    rng = random.Random(seed)
    out = {}
    for M in range(0, m_max + 1):
        diff = poly_lm(M) - poly_rm(M)
        steps = True
        if M >= 1:
            for _ in range(points):
                b = [rng.randint(-20, 20) for _ in range(M)]
                if not (difference_equation_holds(poly_lm, M, b) and difference_equation_holds(poly_rm, M, b)):
                    steps = False
                    break
        out[M] = {"zero": diff.is_zero(), "difference_equation": steps}
    return out
