"""Multidifferentials as rational coefficients of dz_1 ... dz_n."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

from ..algebra import RationalFunction, U1, Z, rf_var
from ..curve import Curve


def canonical_slots(n: int) -> tuple[int, ...]:
    return tuple(range(Z, Z + n))


@dataclass(frozen=True)
class OmegaForm:
    arity: int
    variables: tuple
    coefficient: RationalFunction

    def rename(self, new_vars: Sequence[int]) -> "OmegaForm":
        new_vars = tuple(new_vars)
        mapping = {a: b for a, b in zip(self.variables, new_vars) if a != b}
        return OmegaForm(self.arity, new_vars, self.coefficient.rename(mapping))

    def permuted(self, perm: Sequence[int]) -> RationalFunction:
        """Coefficient with argument slot i replaced by slot perm[i]."""
        mapping = {self.variables[i]: self.variables[p] for i, p in enumerate(perm)}
        return self.coefficient.rename(mapping)

    def at(self, first, rest: Sequence[int]) -> RationalFunction:
        """omega(first, rest...) as a rational function."""
        return self.rename((first, *rest)).coefficient

    def evaluate(self, values: Sequence[complex]) -> complex:
        return self.coefficient.evaluate(dict(zip(self.variables, values)))


def bergman(w: int, z: int) -> OmegaForm:
    if w == z:
        raise ValueError("bergman kernel needs two distinct variables")
    return OmegaForm(2, (w, z), 1 / (rf_var(w) - rf_var(z)) ** 2)


def omega2(curve: Curve) -> OmegaForm:
    w, z = rf_var(Z), rf_var(U1)
    iz = curve.iota.of(U1)
    coef = 1 / (w - z) ** 2 - curve.iota.derivative(U1) / (w - iz) ** 2
    return OmegaForm(2, (Z, U1), coef)


def ordered_pairs(items: Sequence) -> Iterator[tuple[tuple, tuple]]:
    """All ordered (I1, I2) with I1 + I2 = items, both nonempty."""
    items = tuple(items)
    n = len(items)
    for mask in range(1, (1 << n) - 1):
        a = tuple(x for i, x in enumerate(items) if mask >> i & 1)
        b = tuple(x for i, x in enumerate(items) if not mask >> i & 1)
        yield a, b


def set_partitions(items: Sequence) -> Iterator[list[tuple]]:
    """Unordered set partitions into nonempty blocks (blocks keep item order)."""
    items = tuple(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [(first,) + p[i]] + p[i + 1:]
        yield [(first,)] + p


def ordered_compositions(items: Sequence, s: int) -> Iterator[tuple[tuple, ...]]:
    """Ordered decompositions I1 + ... + Is = items into nonempty blocks."""
    for p in set_partitions(items):
        if len(p) == s:
            for perm in itertools.permutations(p):
                yield perm


def partitions_with_weight(items: Sequence, s: int) -> Iterator[tuple[list, int]]:
    """Set partitions into s blocks with multiplicity s! (ordered count)."""
    for p in set_partitions(items):
        if len(p) == s:
            yield p, factorial(s)
