"""Laurent ring, linear forms, and factored weight products."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dt4calc.errors import InternalInconsistency, NonGenericParameters
from dt4calc.exact import (FactoredWeightProduct, Laurent, LinForm,
                           exp_cy_reduce, weight_of)

DEFAULT_S = (Fraction(1), Fraction(2), Fraction(3), Fraction(-6))

exps = st.tuples(*[st.integers(-3, 3)] * 4)
coeffs = st.fractions(min_value=-8, max_value=8, max_denominator=6)


@st.composite
def laurents(draw):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        terms[draw(exps)] = draw(coeffs)
    return Laurent(terms)


@settings(max_examples=60, deadline=None)
@given(laurents(), laurents(), laurents())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Laurent.zero() == a
    assert a * Laurent.one() == a
    assert a - a == Laurent.zero()


@settings(max_examples=60, deadline=None)
@given(laurents(), laurents())
def test_bar_is_a_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a + b).bar() == a.bar() + b.bar()
    assert (a * b).bar() == a.bar() * b.bar()


@settings(max_examples=60, deadline=None)
@given(laurents(), laurents())
def test_cy_reduce_is_an_idempotent_homomorphism(a, b):
    assert a.cy_reduce().cy_reduce() == a.cy_reduce()
    assert (a + b).cy_reduce() == a.cy_reduce() + b.cy_reduce()
    assert (a * b).cy_reduce() == (a.cy_reduce() * b.cy_reduce()).cy_reduce()


def test_cy_reduce_kills_the_determinant_character():
    kappa = Laurent.monomial((1, 1, 1, 1))
    assert kappa.cy_reduce() == Laurent.one()
    assert exp_cy_reduce((2, 0, 1, 1)) == (1, -1, 0, 0)


def test_monomial_arithmetic_and_string():
    t1 = Laurent.variable(1)
    t2 = Laurent.variable(2)
    p = t1 * t2 + 2 * t2
    assert p.coeff((1, 1, 0, 0)) == 1
    assert p.coeff((0, 1, 0, 0)) == 2
    assert str(Laurent.variable(1, -1) + 2 * t2) == "t1^-1 + 2*t2"
    assert str(Laurent.zero()) == "0"


def test_effectivity_predicates():
    assert (Laurent.variable(1) + Laurent.variable(2)).is_effective_integral()
    assert not (Laurent.variable(1) - Laurent.variable(2)).is_effective_integral()
    assert not Laurent({(1, 0, 0, 0): Fraction(1, 2)}).is_effective_integral()
    assert Laurent({(1, 0, 0, 0): Fraction(1, 2)}).has_integral_coeffs() is False


@settings(max_examples=60, deadline=None)
@given(exps, exps)
def test_weight_of_turns_products_into_sums(e, f):
    combined = tuple(x + y for x, y in zip(e, f))
    assert weight_of(combined) == weight_of(e) + weight_of(f)


def test_linform_equality_lives_on_the_subtorus():
    # adding a multiple of s1+s2+s3+s4 does not change the form
    assert LinForm((1, 0, 0, 0)) == LinForm((2, 1, 1, 1))
    assert LinForm((1, 1, 1, 1)).is_zero()
    assert hash(LinForm((1, 0, 0, 0))) == hash(LinForm((2, 1, 1, 1)))


def test_linform_canonical_representative():
    w = LinForm((0, 0, 0, 1))  # reduced (-1, -1, -1)
    rep, sign = w.canonical()
    assert sign == -1 and rep == -w and rep.is_canonical()
    zero = LinForm((1, 1, 1, 1))
    assert zero.canonical() == (zero, 1)


def test_linform_evaluate_and_str():
    w = LinForm((1, 1, 0, 0))
    assert w.evaluate(DEFAULT_S) == 3
    assert str(w) == "s1 + s2"
    assert str(LinForm((0, 0, 0, 1))) == "-s1 - s2 - s3"


def test_weight_product_single_pair_value():
    fwp = FactoredWeightProduct.identity().times_weight(LinForm((1, 1, 0, 0)))
    assert fwp.evaluate(DEFAULT_S) == 3


def test_weight_product_all_four_coordinates():
    fwp = FactoredWeightProduct.identity()
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        w, sign = LinForm(e).canonical()
        fwp = fwp.times_weight(w)
        if sign < 0:
            fwp = fwp.negated()
    assert fwp.evaluate(DEFAULT_S) == 1 * 2 * 3 * -6


def test_weight_product_vanishing_factor_raises():
    fwp = FactoredWeightProduct.identity().times_weight(
        LinForm((1, 1, -1, 0)).canonical()[0])
    with pytest.raises(NonGenericParameters):
        fwp.evaluate(DEFAULT_S)


def test_weight_product_zero_flag():
    fwp = FactoredWeightProduct.identity().times_weight(LinForm((1, 1, 1, 1)))
    assert fwp.zero
    assert fwp.evaluate(DEFAULT_S) == 0
    assert FactoredWeightProduct.zero_product().degree() == 0


def test_weight_product_denominator_factors():
    w = LinForm((1, 0, 0, 0))
    fwp = FactoredWeightProduct.identity().times_weight(w, -1)
    assert fwp.evaluate(DEFAULT_S) == 1
    assert fwp.degree() == -1
    with pytest.raises(InternalInconsistency):
        FactoredWeightProduct.identity().times_weight(LinForm((1, 1, 1, 1)), -1)


def test_weight_product_multiplicities_cancel():
    w = LinForm((1, 0, 0, 0))
    fwp = FactoredWeightProduct.identity().times_weight(w, 2).times_weight(w, -1)
    assert fwp.factors == {w: 1}
    assert fwp.times_weight(w, -1).factors == {}
    assert fwp.degree() == 1
