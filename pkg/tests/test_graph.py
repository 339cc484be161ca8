from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph, path_graph
from spectral_iso.graph import (
    AsymmetricMatrixError,
    DegenerateMatrixError,
    Graph,
    ShiftedMatrix,
    apply_permutation,
    as_permutation,
    build_shifted_unweighted,
    build_shifted_weighted,
    condition_bound,
    inverse_permutation,
    verify_iso,
)

P3 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
K2 = np.array([[0, 1], [1, 0]])


def _eta_chi(a):
    # independent of ShiftedMatrix: plain row loops with exact fractions
    rows = [[Fraction(v) for v in r] for r in np.asarray(a).tolist()]
    eta = max(r[i] + sum(abs(v) for k, v in enumerate(r) if k != i) for i, r in enumerate(rows))
    chi = min(r[i] - sum(abs(v) for k, v in enumerate(r) if k != i) for i, r in enumerate(rows))
    return eta, chi


# -- graphs and permutations ------------------------------------------------


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_graph_rejects_conflicting_weights():
    with pytest.raises(AsymmetricMatrixError):
        Graph.from_edges(3, [(0, 1, 2.0), (1, 0, 3.0)])


def test_graph_adjacency_round_trip():
    g = Graph.from_edges(4, [(0, 1), (2, 3, 2.5)])
    a = g.adjacency()
    assert a[3, 2] == 2.5 and a[1, 0] == 1
    assert Graph.from_adjacency(a) == g
    assert g.weighted and not path_graph(3).weighted


def test_as_permutation_validates():
    assert as_permutation([2, 0, 1]).tolist() == [2, 0, 1]
    with pytest.raises(ValueError):
        as_permutation([0, 0, 1])
    with pytest.raises(ValueError):
        as_permutation([0, 1], n=3)
    assert inverse_permutation([2, 0, 1]).tolist() == [1, 2, 0]


# -- shift constructions ----------------------------------------------------


def test_unweighted_empty_graph_is_identity():
    sm = build_shifted_unweighted(Graph(3))
    assert np.array_equal(sm.dense(), np.eye(3))


@pytest.mark.parametrize(
    "adj, expected",
    [
        (K2, [[2, 1], [1, 2]]),
        (P3, [[2, 1, 0], [1, 3, 1], [0, 1, 2]]),
    ],
)
def test_unweighted_examples(adj, expected):
    sm = build_shifted_unweighted(adj)
    assert np.array_equal(sm.dense(), expected)
    assert np.all(sm.perturb == 0)


def test_unweighted_rejects_weights():
    with pytest.raises(ValueError):
        build_shifted_unweighted(np.array([[0, 2], [2, 0]]))


def test_weighted_zero_matrix_is_degenerate():
    sm = build_shifted_weighted(np.zeros((2, 2)))
    assert np.array_equal(sm.shift, [0, 0])
    assert np.array_equal(sm.dense(), np.zeros((2, 2)))
    assert sm.degenerate and sm.margin == 0
    with pytest.raises(DegenerateMatrixError):
        condition_bound(sm)


def test_weighted_two_by_two():
    sm = build_shifted_weighted(np.array([[0, 2], [2, 0]]))
    assert np.array_equal(sm.shift, [4, 4])
    assert np.array_equal(sm.dense(), [[4, 2], [2, 4]])
    assert condition_bound(sm) == 3.0


def test_weighted_path_shift():
    sm = build_shifted_weighted(np.array([[0, 1, 0], [1, 0, 3], [0, 3, 0]]))
    assert np.array_equal(sm.shift, [5, 8, 7])


def test_weighted_rejects_asymmetric():
    with pytest.raises(AsymmetricMatrixError):
        build_shifted_weighted(np.array([[0, 1], [2, 0]]))


def test_negative_weights_use_absolute_row_sums():
    sm = build_shifted_weighted(np.array([[0, -2], [-2, 0]]))
    assert np.array_equal(sm.shift, [4, 4])
    assert sm.margin == 2


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(4), 1.0),
        (np.array([[4, 2], [2, 4]]), 3.0),
        (np.array([[2, 1, 0], [1, 3, 1], [0, 1, 2]]), 5.0),
    ],
)
def test_condition_bound_examples(a, expected):
    n = a.shape[0]
    base = a - np.diag(np.diag(a))
    sm = ShiftedMatrix(base, np.diag(a).astype(float), np.zeros(n))
    eta, chi = _eta_chi(a)
    assert float(eta / chi) == expected
    assert condition_bound(sm) == expected


def test_perturbed_advances_revision_and_keeps_original():
    sm = build_shifted_unweighted(P3)
    sm2 = sm.perturbed(1, 0.5)
    assert sm2.revision == sm.revision + 1
    assert sm.perturb[1] == 0 and sm2.perturb[1] == 0.5
    assert sm2.dense()[1, 1] == 3.5
    with pytest.raises(ValueError):
        sm.shift[0] = 7


# -- permutation action and verification -----------------------------------


def test_apply_permutation_examples():
    assert np.array_equal(apply_permutation(P3, [0, 1, 2]), P3)
    assert np.array_equal(apply_permutation(K2, [1, 0]), K2)
    assert np.array_equal(apply_permutation(P3, [1, 0, 2]), [[0, 1, 1], [1, 0, 0], [1, 0, 0]])


def test_verify_iso_examples():
    assert verify_iso(P3, P3, [0, 1, 2])
    assert verify_iso(K2, K2, [1, 0])
    assert not verify_iso(P3, P3, [1, 0, 2])
    assert not verify_iso(P3, P3, [0, 0, 2])
    assert not verify_iso(P3, K2, [0, 1])


def test_verify_iso_real_weights_tolerance():
    a = np.array([[0, 0.1], [0.1, 0]])
    assert verify_iso(a, a + 1e-12 * K2, [0, 1])
    assert not verify_iso(a, a + 1e-6 * K2, [0, 1])
    # integer-coded inputs compare exactly
    assert not verify_iso(K2, K2 * (1 + 1e-12), [0, 1])


# -- properties -------------------------------------------------------------


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def weighted_symmetric(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.floats(-100, 100, allow_nan=False), min_size=n * n, max_size=n * n))
    m = np.array(vals).reshape(n, n)
    m = np.triu(m, 1)
    return m + m.T


@given(graphs())
def test_unweighted_margin_is_exactly_one(g):
    sm = build_shifted_unweighted(g)
    assert np.all(sm.margins() == 1)


@given(weighted_symmetric())
def test_weighted_condition_bound_at_most_three(m):
    if not np.any(m):
        return
    assert condition_bound(build_shifted_weighted(m)) <= 3 + 1e-12


@given(graphs(), st.randoms(use_true_random=False))
def test_shift_is_permutation_equivariant(g, r):
    p = list(range(g.n))
    r.shuffle(p)
    a = build_shifted_unweighted(g).dense()
    b = build_shifted_unweighted(g.relabel(p)).dense()
    assert np.array_equal(b, apply_permutation(a, p))


@settings(max_examples=50)
@given(graphs(), st.randoms(use_true_random=False))
def test_verify_iso_inverse_symmetry(g, r):
    p = list(range(g.n))
    r.shuffle(p)
    q = list(range(g.n))
    r.shuffle(q)
    b = g.relabel(q).adjacency()
    a = g.adjacency()
    assert verify_iso(a, b, p) == verify_iso(b, a, inverse_permutation(p))


def test_complete_graph_any_permutation_verifies():
    k3 = complete_graph(3).adjacency()
    assert all(verify_iso(k3, k3, p) for p in ([0, 1, 2], [2, 0, 1], [1, 0, 2]))
