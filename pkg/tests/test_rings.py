import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylpos import linalg
from weylpos.polynomial import Poly
from weylpos.rings import (
    A, B, C, ONE, Pair, PairError, basis, check, check_pair_OG, check_pair_OU, combine,
    cone_membership, decompose, f_family, g_family, make, make_f, make_fprime, make_g,
    make_gprime, matrix_coordinate_dim, weight_of, weight_space_dim,
)


def f_indices(max_j=6):
    return [(i, j, k) for j in range(max_j + 1) for i in range(j + 1) for k in range(j - i + 1)]


def test_small_examples():
    assert make_f(0, 1, 0) == Pair(B, A + C)
    assert make_f(0, 2, 0) == Pair(B**2, A**2 + 2 * A * C + C**2)
    assert make_f(1, 2, 1) == Pair(A * B**2 * C, A * B**2 * C) == make_fprime(1, 2, 1)
    assert make_f(1, 1, 0) == make_fprime(0, 1, 1)
    assert make_g(0, 0, 0) == Pair(ONE, ONE)
    assert make_g(1, -1, 0) == Pair(A * B, C * B**-1)
    assert make_g(1, -2, 1) == make_gprime(1, -2, 1)


def test_invalid_pair_fails_gluing():
    res = check_pair_OU(Pair(A, A))
    assert not res and res.diff


@pytest.mark.parametrize("ijk", f_indices())
def test_f_gluing(ijk):
    assert check_pair_OU(make_f(*ijk))
    assert check_pair_OU(make_fprime(*ijk))


def test_f_index_errors():
    with pytest.raises(PairError):
        make_f(1, 1, 1)
    with pytest.raises(PairError):
        make_fprime(-1, 2, 0)


def test_identifications():
    for i in range(7):
        for k in range(7 - i):
            assert make_f(i, i + k, k) == make_fprime(k, i + k, i)
    for i in range(4):
        for k in range(4):
            assert make_g(i, -i - k, k) == make_gprime(k, -i - k, i)


def test_weights():
    assert weight_of(make_f(1, 3, 0)) == (1, 3)
    assert weight_of(make_fprime(1, 3, 0)) == (3, 1)
    assert weight_of(Pair(A * B, B * C)) == (1, 1)


@pytest.mark.parametrize("m", range(9))
def test_weight_spaces(m):
    for n in range(9 - m):
        elems = basis(m, n)
        cols = []
        monos = sorted({("1", e) for p in elems for e in p.first.terms} | {("2", e) for p in elems for e in p.second.terms})
        for p in elems:
            assert weight_of(p) == (m, n)
            cols.append([(p.first if s == "1" else p.second).coefficient(e) for s, e in monos])
        assert linalg.rank(linalg.transpose(cols)) == len(elems)
        assert len(elems) == weight_space_dim(m, n) == matrix_coordinate_dim(m, n) == min(m, n) + 1


def test_decompose_examples():
    v = make_f(0, 1, 0) + 2 * make_f(1, 1, 0)
    assert decompose(v) == {("f", 0, 1, 0): 1, ("f", 1, 1, 0): 2}
    assert decompose(Pair((A + C) * B, B * (A + C))) == {("f", 1, 1, 0): 1, ("f", 0, 1, 1): 1}


def test_decompose_rejects_non_pairs():
    with pytest.raises(PairError):
        decompose(Pair(A, A))


def test_cone_examples():
    v = cone_membership(make_f(0, 1, 0), 3)
    assert v.chart_nonneg and v.basis_nonneg
    v = cone_membership(make_f(0, 1, 0) - make_f(1, 1, 0), 3)
    assert not v.basis_nonneg and v.agree
    v = cone_membership(Fraction(1, 3) * make_fprime(0, 1, 0), 3)
    assert v.chart_nonneg and v.basis_nonneg
    with pytest.raises(PairError):
        cone_membership(make_f(0, 4, 0), 3)


ALL_F = f_family(4)
coeffs = st.fractions(min_value=0, max_value=5, max_denominator=7)


@given(st.lists(st.tuples(st.sampled_from(ALL_F), coeffs), min_size=1, max_size=5))
def test_cone_agreement_nonneg(terms):
    v = combine({p.label: 0 for p in ALL_F[:1]})
    for p, c in terms:
        v = v + c * p
    verdict = cone_membership(v, 8)
    assert verdict.chart_nonneg and verdict.basis_nonneg


@given(st.lists(st.tuples(st.sampled_from(ALL_F), coeffs), max_size=4), st.sampled_from(ALL_F),
       st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7))
def test_cone_agreement_negative(terms, bad, c):
    v = combine({})
    used = {bad.label}
    for p, a in terms:
        if p.label not in used and p != bad:
            v = v + a * p
            used.add(p.label)
    v = v - c * bad
    verdict = cone_membership(v, 8)
    assert not verdict.basis_nonneg and not verdict.chart_nonneg


@pytest.mark.parametrize("p", g_family(3, -6), ids=lambda p: p.pretty().split(" =")[0])
def test_g_gluing(p):
    assert check_pair_OG(p)


def test_g_index_errors():
    with pytest.raises(PairError):
        make_g(1, 0, 0)
    with pytest.raises(PairError):
        make_gprime(-1, 0, 0)


def test_og_rejects_wrong_pair():
    assert not check_pair_OG(Pair(A * B, A * B))


def test_json_round_trip():
    for p in (make_f(1, 3, 1), make_gprime(2, -5, 1)):
        q = Pair.from_json(p.to_json())
        assert q == p and check(make(p.label[0], *p.label[1:]))
    with pytest.raises(PairError):
        Pair.from_json({"first": []})
