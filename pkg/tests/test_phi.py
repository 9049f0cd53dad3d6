import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import QQ
from sympy.polys.fields import field as sympy_field

from weylpos import linalg
from weylpos.diagrams import named_diagram
from weylpos.phi import (
    NotTotallyPositiveError, _phi_pipeline, a1_identity_checks, a3_orbit_check,
    compiled_tropical_phi, factor_unipotent, phi, phi_closed, phi_closed_alt, phi_matrix,
    phi_of_u, phi_prime, phi_tropical, pinning,
)
from weylpos.semifields import POSRAT, TRIVIAL, TROPINT, SemifieldError
from weylpos.upoints import UPoint, psi, scale, t_op, u_p
from weylpos.weyl import CapabilityError, weyl_group

from conftest import rand_pos

A1, A2, A3, A1A1 = (named_diagram(n) for n in ("A1", "A2", "A3", "A1xA1"))
posrats = st.builds(Fraction, st.integers(1, 30), st.integers(1, 30))


def tropical_closed_a2(a, b, c):
    """min-plus image of (a/(c(a+c)), (a+c)/(ab), 1/(a+c))."""
    m = min(a, c)
    return (a - c - m, m - a - b, -m)


def test_a2_worked_example():
    W = weyl_group(A2)
    x = UPoint(W, POSRAT, ("i", "j", "i"), (1, 1, 1))
    expect = (Fraction(1, 2), Fraction(2), Fraction(1, 2))
    assert phi_closed(x).coords == expect
    assert phi_matrix(x).coords == expect
    assert phi_closed_alt(x).coords == expect


@given(posrats, posrats, posrats)
def test_a2_closed_matrix_alt_agree(a, b, c):
    x = UPoint(weyl_group(A2), POSRAT, ("i", "j", "i"), (a, b, c))
    y = phi_closed(x)
    assert phi_matrix(x) == y
    assert phi_closed_alt(x) == y


@given(posrats)
def test_a1_is_inversion(c):
    x = UPoint(weyl_group(A1), POSRAT, ("1",) if weyl_group(A1).vertices == ("1",) else ("i",), (c,))
    assert phi_matrix(x).coords == (1 / c,)
    assert phi_closed(x).coords == (1 / c,)


def test_a1_symbolic():
    F, z = sympy_field("z", QQ)
    (out,) = _phi_pipeline(A1, weyl_group(A1).vertices, [z], F.zero, F.one, None)
    assert out == 1 / z


def test_a1xa1_componentwise():
    x = UPoint(weyl_group(A1A1), POSRAT, ("i", "j"), (2, 3))
    assert phi(x).coords == (Fraction(1, 2), Fraction(1, 3))
    assert phi(UPoint(weyl_group(A1A1), TROPINT, ("j", "i"), (2, -3))).coords == (-2, 3)


@pytest.mark.parametrize("d", [A2, A3], ids=["A2", "A3"])
def test_involution_and_equivariance(d, rng):
    W = weyl_group(d)
    for _ in range(5):
        x = UPoint(W, POSRAT, W.longest_word, tuple(rand_pos(rng) for _ in range(W.nu)))
        y = phi(x)
        assert phi(y) == x
        assert phi_prime(phi_prime(x)) == x
        for i in W.vertices:
            c = rand_pos(rng)
            assert t_op(i, c, y) == phi(t_op(W.bang[i], 1 / c, x))
        p = {i: rand_pos(rng) for i in W.vertices}
        assert scale(p, y) == phi(scale({i: 1 / v for i, v in p.items()}, x))
        assert phi(u_p(p, d, POSRAT)) == phi_of_u(p, d)


def test_phi_of_u_one_a2():
    # u(1) = (1, 2, 1) and q = (2, 2), so u(q^-1) = (1/2, 1, 1/2)
    assert phi(u_p({"i": 1, "j": 1}, A2, POSRAT)).coords == (Fraction(1, 2), Fraction(1), Fraction(1, 2))


def test_phi_prime_is_conjugate():
    W = weyl_group(A2)
    x = UPoint(W, POSRAT, ("i", "j", "i"), (1, 2, 3))
    assert phi_prime(x) == psi(phi(psi(x)))
    assert phi_prime(x) != phi(x)


def test_tropical_a2_against_closed_form():
    W = weyl_group(A2)
    for p in itertools.product(range(-3, 4), repeat=3):
        x = UPoint(W, TROPINT, ("i", "j", "i"), p)
        assert phi_tropical(x).coords == tropical_closed_a2(*p)
        assert phi_closed(x).coords == tropical_closed_a2(*p)
        assert phi_closed_alt(x).coords == tropical_closed_a2(*p)


def test_tropical_worked_example():
    x = UPoint(weyl_group(A2), TROPINT, ("i", "j", "i"), (1, 2, 3))
    assert phi(x, "tropical").coords == (-3, -2, -1)


def test_compiled_matches_pipeline_a3(rng):
    comp = compiled_tropical_phi(A3)
    assert comp.subtraction_free
    W = weyl_group(A3)
    pts = [tuple(rng.randint(-4, 4) for _ in range(6)) for _ in range(40)]
    batch = comp.batch(np.array(pts))
    for p, row in zip(pts, batch):
        slow = phi_tropical(UPoint(W, TROPINT, W.longest_word, p)).coords
        assert slow == comp(p) == tuple(int(v) for v in row)


def test_tropical_involution_a3(rng):
    W = weyl_group(A3)
    for _ in range(20):
        x = UPoint(W, TROPINT, rng.choice(W.reduced_words), tuple(rng.randint(-5, 5) for _ in range(6)))
        assert phi_tropical(phi_tropical(x)) == x


def test_trivial_semifield_closed_form():
    x = UPoint(weyl_group(A2), TRIVIAL, ("i", "j", "i"), (1, 1, 1))
    assert phi(x).coords == (1, 1, 1)


def test_capability_errors():
    W = weyl_group(named_diagram("D4"))
    x = UPoint(W, POSRAT, W.longest_word, (1,) * 12)
    with pytest.raises(CapabilityError):
        phi(x)
    with pytest.raises(SemifieldError):
        phi_matrix(UPoint(weyl_group(A2), TROPINT, ("i", "j", "i"), (0, 0, 0)))


def test_factor_rejects_non_positive():
    bad = [[Fraction(1), 0, 0], [Fraction(-1), Fraction(1), 0], [Fraction(1), Fraction(1), Fraction(1)]]
    with pytest.raises(NotTotallyPositiveError):
        factor_unipotent(bad, A2)


def test_factor_round_trip(rng):
    P = pinning(A3)
    W = weyl_group(A3)
    for word in W.reduced_words[:4]:
        coords = [rand_pos(rng) for _ in word]
        v = P.y_product(word, coords)
        assert factor_unipotent(v, A3, word) == tuple(coords)


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_a1_identities(name):
    report = a1_identity_checks(named_diagram(name))
    assert report["ok"] and report["u1_exp"] and report["uqinv_exp"] and report["sl2_triple"]


@pytest.mark.parametrize("name", ["D4", "E6"])
def test_q_identity_other_types(name):
    report = a1_identity_checks(named_diagram(name))
    assert report["ok"] and "u1_exp" not in report


@pytest.mark.parametrize("d", [A2, A3], ids=["A2", "A3"])
def test_orbit_identity(d, rng):
    W = weyl_group(d)
    for _ in range(5):
        assert a3_orbit_check({i: rand_pos(rng) for i in W.vertices}, d)


def test_orbit_identity_detects_wrong_scaling():
    # replacing q^-1 p^-1 by p^-1 must break the identity
    W = weyl_group(A2)
    P = pinning(A2)
    p = {i: Fraction(1) for i in W.vertices}
    g = P.x_product(*_wc(u_p(p, A2, POSRAT)))
    h = P.y_product(*_wc(u_p(p, A2, POSRAT)))
    from weylpos.phi import flag_columns
    assert not all(linalg.same_span(a, b) for a, b in zip(flag_columns(g, True), flag_columns(h, False)))


def _wc(x):
    return x.word, x.coords
