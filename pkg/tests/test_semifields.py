import pickle
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weylpos.semifields import (
    POSRAT, TRIVIAL, TROPARRAY, TROPINT, SFPoly, SFRational, SemifieldError, by_name,
    eval_field, eval_poly, eval_sf, format_fraction,
)

posrats = st.builds(Fraction, st.integers(1, 60), st.integers(1, 20))
tropints = st.integers(-50, 50)

ELEMENTS = {"posrat": posrats, "tropint": tropints, "trivial": st.just(1)}


@pytest.mark.parametrize("name", ["posrat", "tropint", "trivial"])
@given(data=st.data())
def test_semifield_axioms(name, data):
    K = by_name(name)
    a, b, c = (data.draw(ELEMENTS[name]) for _ in range(3))
    assert K.add(a, b) == K.add(b, a)
    assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
    assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.mul(a, K.inv(a)) == K.one
    assert K.mul(a, K.one) == a


@pytest.mark.parametrize("name", ["posrat", "tropint", "trivial"])
@given(m=st.integers(1, 20), n=st.integers(1, 20))
def test_embedding_is_additive(name, m, n):
    K = by_name(name)
    assert K.add(K.embed_posint(m), K.embed_posint(n)) == K.embed_posint(m + n)
    assert K.embed_posint(m) == K.repeated_sum(K.one, m)


def test_embedding_values():
    assert POSRAT.embed_posint(3) == 3
    assert TROPINT.embed_posint(3) == 0
    assert TRIVIAL.embed_posint(3) == 1
    with pytest.raises(SemifieldError):
        POSRAT.embed_posint(0)


def test_coercion_errors():
    with pytest.raises(SemifieldError):
        POSRAT.coerce(0)
    with pytest.raises(SemifieldError):
        POSRAT.coerce("x")
    with pytest.raises(SemifieldError):
        TROPINT.coerce(Fraction(1, 2))
    with pytest.raises(SemifieldError):
        TRIVIAL.coerce(2)
    with pytest.raises(SemifieldError):
        by_name("reals")


def test_json_forms():
    assert POSRAT.to_json(Fraction(6, 4)) == "3/2"
    assert POSRAT.from_json("3/2") == Fraction(3, 2)
    assert TROPINT.from_json("-4") == -4
    assert format_fraction(5) == "5"


def test_pickle_keeps_singletons():
    assert pickle.loads(pickle.dumps(TROPINT)) is TROPINT


def test_troparray_matches_tropint():
    a, b = np.array([3, -1, 0]), np.array([2, 5, 0])
    assert list(TROPARRAY.add(a, b)) == [TROPINT.add(x, y) for x, y in zip(a, b)]


def test_sfpoly_rejects_subtraction():
    with pytest.raises(SemifieldError):
        SFPoly((((1, 0), -1),))
    with pytest.raises(SemifieldError):
        SFPoly((((1, 0), 0),))
    with pytest.raises(SemifieldError):
        SFPoly(())
    with pytest.raises(SemifieldError):
        SFPoly((((-1, 0), 1),))


def test_eval_known_values():
    # (a + c) / (a b)
    f = SFRational(SFPoly.from_dict({(1, 0, 0): 1, (0, 0, 1): 1}), SFPoly.monomial((1, 1, 0)))
    assert eval_sf(f, [Fraction(1), Fraction(1), Fraction(1)], POSRAT) == 2
    assert eval_sf(f, [1, 2, 3], TROPINT) == 1 - 3
    assert eval_sf(f, [1, 1, 1], TRIVIAL) == 1


def test_coefficient_is_a_repeated_sum():
    p = SFPoly.monomial((1,), 3)
    assert eval_poly(p, [Fraction(2)], POSRAT) == 6
    assert eval_poly(p, [5], TROPINT) == 5


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 4), min_size=1, max_size=4).map(SFPoly.from_dict)


@given(polys, polys, st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_tropical_eval_is_a_homomorphism(p, q, x):
    assert eval_poly(p + q, x, TROPINT) == min(eval_poly(p, x, TROPINT), eval_poly(q, x, TROPINT))
    assert eval_poly(p * q, x, TROPINT) == eval_poly(p, x, TROPINT) + eval_poly(q, x, TROPINT)


@given(polys, st.tuples(posrats, posrats))
def test_posrat_eval_matches_field_eval(p, x):
    assert eval_poly(p, x, POSRAT) == eval_field(p, x, Fraction(1))


@given(polys, polys)
def test_json_round_trip(p, q):
    f = SFRational(p, q)
    assert SFRational.parse(f.to_json()) == f
