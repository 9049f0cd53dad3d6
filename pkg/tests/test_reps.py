from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylpos.diagrams import named_diagram, type_a
from weylpos.reps import (
    BudgetExceededError, enum_index_set, report_ok, verify_12, weyl_dim,
)
from weylpos.weyl import CapabilityError

A2, A3 = named_diagram("A2"), named_diagram("A3")


def gl_dim(lam):
    """dim of the GL_{n+1} module with fundamental-weight coordinates ``lam``."""
    n = len(lam)
    parts = [sum(lam[k:]) for k in range(n)] + [0]
    out = Fraction(1)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            out *= Fraction(parts[i] - parts[j] + j - i, j - i)
    return int(out)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_weyl_dim_type_a(lam):
    g = type_a(len(lam))
    assert weyl_dim(g, dict(zip(g.vertices, lam))) == gl_dim(lam)


@pytest.mark.parametrize("name,vertex,dim", [("D4", "1", 8), ("D4", "2", 28), ("E6", "1", 27),
                                             ("E7", "7", 56), ("E8", "8", 248), ("E8", "1", 3875)])
def test_weyl_dim_fundamental(name, vertex, dim):
    g = named_diagram(name)
    assert weyl_dim(g, {v: int(v == vertex) for v in g.vertices}) == dim


def test_weyl_dim_rejects_bad_weight():
    with pytest.raises(ValueError):
        weyl_dim(A2, {"i": 1})
    with pytest.raises(ValueError):
        weyl_dim(A2, {"i": -1, "j": 0})


def test_a2_fundamental_set():
    s = enum_index_set(A2, {"i": 1, "j": 0}, "plain")
    assert s.points == [(0, 0, 0), (0, 0, 1), (1, 0, 1)]
    assert s.oracle_agrees


@pytest.mark.parametrize("lam,count", [((1, 1), 8), ((2, 1), 15), ((2, 2), 27)])
def test_a2_counts(lam, count):
    for kind in ("plain", "phi", "phi_prime"):
        assert len(enum_index_set(A2, dict(zip("ij", lam)), kind)) == count


@pytest.mark.parametrize("lam,count", [((1, 0, 0), 4), ((0, 1, 0), 6), ((1, 1, 1), 64)])
def test_a3_counts(lam, count):
    assert len(enum_index_set(A3, dict(zip("123", lam)), "plain")) == count


def test_other_charts_give_the_same_count():
    lam = {"1": 1, "2": 0, "3": 1}
    counts = {len(enum_index_set(A3, lam, "plain", word=w)) for w in [("2", "1", "3", "2", "1", "3"), ("3", "2", "1", "3", "2", "3")]}
    assert counts == {15}


def test_verify_report():
    report = verify_12(A2, {"i": 2, "j": 1})
    assert report_ok(report)
    assert report["counts"] == {"plain": 15, "phi": 15, "phi_prime": 15, "weyl": 15}


def test_parallel_matches_serial():
    lam = {"1": 1, "2": 1, "3": 0}
    serial = enum_index_set(A3, lam, "phi")
    parallel = enum_index_set(A3, lam, "phi", jobs=2)
    assert serial.points == parallel.points


def test_budget():
    with pytest.raises(BudgetExceededError):
        enum_index_set(A3, {"1": 2, "2": 2, "3": 2}, budget=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("WEYLPOS_BUDGET", "50")
    with pytest.raises(BudgetExceededError):
        enum_index_set(A3, {"1": 1, "2": 1, "3": 1})


def test_capabilities():
    with pytest.raises(CapabilityError):
        enum_index_set(named_diagram("D4"), {v: 0 for v in "1234"})
    with pytest.raises(ValueError):
        enum_index_set(A2, {"i": 1, "j": 0}, "sideways")


def test_a1xa1():
    d = named_diagram("A1xA1")
    s = enum_index_set(d, {"i": 2, "j": 1}, "plain")
    assert len(s) == 6 == s.weyl
    assert report_ok(verify_12(d, {"i": 2, "j": 1}))
