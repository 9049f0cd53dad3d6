import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weylpos.diagrams import diagram_type, find_harmonic, named_diagram, type_a
from weylpos.weyl import (
    CapabilityError, WordError, affine_extension, apply_moves, apply_reflection, weyl_group,
)

NU = {"A1": 1, "A2": 3, "A3": 6, "D4": 12, "E6": 36, "E7": 63, "E8": 120}


def count_positive_roots(name: str, bound: int) -> int:
    """Nonnegative integer vectors of squared length 2 for the Cartan form."""
    W = weyl_group(named_diagram(name))
    c = np.array(W.cartan, dtype=np.int64)
    n = len(c)
    grid = np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", grid, c, grid)
    return int((norms == 2).sum())


@pytest.mark.parametrize("name,bound", [("A1", 1), ("A2", 1), ("A3", 1), ("D4", 2), ("E6", 3), ("E7", 4)])
def test_nu_against_quadratic_form(name, bound):
    assert weyl_group(named_diagram(name)).nu == count_positive_roots(name, bound) == NU[name]


def test_nu_e8():
    W = weyl_group(named_diagram("E8"))
    assert W.nu == 120
    assert max(W.highest_coroot) == 6


@pytest.mark.parametrize("name", list(NU) + ["A1xA1", "A4", "D5"])
def test_q_identity(name):
    W = weyl_group(named_diagram(name))
    q = W.q
    for jj in range(len(W.vertices)):
        assert sum(q[i] * W.cartan[ii][jj] for ii, i in enumerate(W.vertices)) == 2


@given(st.integers(1, 7))
def test_q_type_a(n):
    W = weyl_group(type_a(n))
    assert [W.q[v] for v in W.vertices] == [k * (n + 1 - k) for k in range(1, n + 1)]


def test_q_e8():
    W = weyl_group(named_diagram("E8"))
    assert [W.q[str(k)] for k in range(1, 9)] == [92, 136, 182, 270, 220, 168, 114, 58]


@pytest.mark.parametrize("name,n_words", [("A1", 1), ("A2", 2), ("A1xA1", 2), ("A3", 16), ("A4", 768)])
def test_reduced_word_counts(name, n_words):
    assert len(weyl_group(named_diagram(name)).reduced_words) == n_words


def test_word_rank_cap():
    with pytest.raises(CapabilityError):
        weyl_group(named_diagram("D5")).reduced_words


@pytest.mark.parametrize("name", ["A2", "A3", "A1xA1"])
def test_braid_paths_connect_all_words(name):
    W = weyl_group(named_diagram(name))
    for w1 in W.reduced_words:
        for w2 in W.reduced_words:
            assert apply_moves(w1, W.braid_path(w1, w2)) == w2


def test_a3_move_graph_diameter():
    assert weyl_group(named_diagram("A3")).move_graph_diameter() == 7


@pytest.mark.parametrize("name,swap", [("A3", {"1": "3", "3": "1"}), ("D4", {}), ("E6", {"1": "6", "6": "1", "3": "5", "5": "3"}),
                                       ("E7", {}), ("E8", {})])
def test_bang(name, swap):
    W = weyl_group(named_diagram(name))
    assert W.bang == {v: swap.get(v, v) for v in W.vertices}


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_root_data_lists_each_positive_coroot_once(name):
    W = weyl_group(named_diagram(name))
    for word in W.reduced_words[:50]:
        data = W.root_data(word)
        vecs = sorted(tuple(r[v] for v in W.vertices) for r in data.r)
        assert vecs == sorted(W.positive_coroots)
        assert data.q == W.q


def test_a2_heights():
    W = weyl_group(named_diagram("A2"))
    assert W.root_data(("i", "j", "i")).heights == (1, 2, 1)


@pytest.mark.parametrize("name", ["A3", "D4", "E6"])
def test_words_ending_and_starting(name):
    W = weyl_group(named_diagram(name))
    for i in W.vertices:
        assert W.word_ending_in(i)[-1] == i and W.is_reduced_longest(W.word_ending_in(i))
        assert W.word_starting_with(i)[0] == i and W.is_reduced_longest(W.word_starting_with(i))


def test_bad_word():
    W = weyl_group(named_diagram("A2"))
    with pytest.raises(WordError):
        W.check_word(("i", "i", "j"))


def test_reflection_is_involution():
    g = named_diagram("D4")
    v = {"1": 1, "2": 3, "3": -2, "4": 0}
    assert apply_reflection(g, "2", apply_reflection(g, "2", v)) == v


@pytest.mark.parametrize("name", ["A3", "D5", "E6", "E7", "E8"])
def test_affine_extension_round_trip(name):
    g = affine_extension(named_diagram(name))
    h = find_harmonic(g)
    assert h["0"] == 1
    assert diagram_type(g.induced(v for v in g.vertices if v != "0")) == name
