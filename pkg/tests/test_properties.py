from hypothesis import given, settings
from hypothesis import strategies as st

from flipsym.algebra.ratfunc import degree_in
from flipsym.algebra import (
    Q, U1, laurent_expand, primitive_from_infinity, residue_at,
)
from residue_facts import (
    fact1_inputs, fact1_residual, fact3_inputs, fact3_residual, fact5_inputs,
    fact5_residual, fracs, polys, q, u,
)


@settings(max_examples=60)
@given(fact1_inputs())
def test_residue_commutation(f):
    assert fact1_residual(f).is_zero()


@settings(max_examples=60)
@given(fact3_inputs())
def test_integration_by_parts(fg):
    assert fact3_residual(*fg).is_zero()


@settings(max_examples=60)
@given(fact5_inputs())
def test_change_of_variables(fm):
    assert fact5_residual(*fm).is_zero()


@settings(max_examples=60)
@given(polys((q, u)), st.lists(fracs, min_size=1, max_size=3), st.integers(1, 3))
def test_residue_is_minus_one_coefficient(num, poles, k):
    den = (q - u) ** k
    for p in poles:
        den = den * (q - p)
    f = num / den
    for p in [u, *poles]:
        assert residue_at(f, Q, p) == laurent_expand(f, Q, p, -1).coefficient(-1)


@settings(max_examples=60)
@given(polys((u, q), max_deg=1), st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 3)),
                                          min_size=1, max_size=3))
def test_primitive_differentiates_back(num, poles):
    den = q ** 0
    for p, k in poles:
        den = den * (u - p - q) ** k
    f = num / den
    if f.is_zero() or degree_in(f.num, U1) > degree_in(f.den, U1) - 2:
        f = 1 / den ** 2
    F = primitive_from_infinity(f, U1)
    assert F.differentiate(U1).to_rational() == f


@settings(max_examples=30)
@given(fact1_inputs())
def test_referential_transparency(f):
    a = residue_at(f, Q, u)
    b = residue_at(f, Q, u)
    assert a == b
    assert str(a.num) == str(b.num) and str(a.den) == str(b.den)
