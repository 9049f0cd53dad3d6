from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylpos.polynomial import Poly

exps = st.tuples(*(st.integers(-2, 3) for _ in range(3)))
coefs = st.fractions(min_value=-4, max_value=4, max_denominator=5)
polys = st.dictionaries(exps, coefs, max_size=5).map(lambda d: Poly(3, d))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.const(3, 0)


@given(polys)
def test_json_round_trip(p):
    assert Poly.from_json(3, p.to_json()) == p


def test_format_and_binomial():
    a, c = Poly.var(3, 0), Poly.var(3, 2)
    assert (a + c) ** 2 == a**2 + 2 * a * c + c**2
    assert ((a + c) ** 2).format() == "a^2 + 2*a*c + c^2"
    assert (Poly.var(3, 1) ** -2).format() == "b^-2"
    assert (a - Fraction(1, 2)).format() == "a - 1/2"


def test_negative_power_needs_monomial():
    with pytest.raises(ValueError):
        (Poly.var(3, 0) + 1) ** -1


def test_wrong_arity_rejected():
    with pytest.raises(ValueError):
        Poly(3, {(1, 2): 1})
