import numpy as np
import pytest

from conftest import complete_graph, path_graph
from spectral_iso.frobenius import permute_rows_cols
from spectral_iso.generators import gnp, random_regular, scramble, torus_lattice
from spectral_iso.graph import apply_permutation, verify_iso
from spectral_iso.oracle import brute_force_frobenius, brute_force_iso

# -- oracle ------------------------------------------------------------------


def test_brute_force_iso_k3():
    k3 = complete_graph(3).adjacency()
    assert brute_force_iso(k3, k3).tolist() == [0, 1, 2]


def test_brute_force_iso_p3_vs_k3():
    assert brute_force_iso(path_graph(3).adjacency(), complete_graph(3).adjacency()) is None


def test_brute_force_iso_planted():
    g = gnp(6, 0.5, 12)
    h, _ = scramble(g, 1)
    p = brute_force_iso(g.adjacency(), h.adjacency())
    assert p is not None and verify_iso(g.adjacency(), h.adjacency(), p)


def test_brute_force_iso_lexicographic_first():
    # the path 0-1-2 onto 1-0-2 has exactly the two solutions (1,0,2) and (2,0,1)
    a = path_graph(3).adjacency()
    b = apply_permutation(a, [1, 0, 2])
    assert brute_force_iso(a, b).tolist() == [1, 0, 2]


def test_brute_force_guards():
    with pytest.raises(ValueError):
        brute_force_iso(np.zeros((11, 11)), np.zeros((11, 11)))
    with pytest.raises(ValueError):
        brute_force_frobenius(np.zeros((7, 7)), np.zeros((7, 7)))


def test_brute_force_frobenius_examples():
    fa = np.array([[1, 2], [3, 4]])
    r, c = brute_force_frobenius(fa, fa)
    assert r.tolist() == [0, 1] and c.tolist() == [0, 1]
    r, c = brute_force_frobenius(fa, fa[[1, 0]])
    assert r.tolist() == [1, 0] and c.tolist() == [0, 1]
    fb = fa.copy()
    fb[0, 0] += 1
    assert brute_force_frobenius(fa, fb) is None


def test_brute_force_frobenius_planted(rng):
    fa = rng.integers(0, 4, size=(4, 4))
    fb = permute_rows_cols(fa, [2, 0, 3, 1], [1, 3, 0, 2])
    r, c = brute_force_frobenius(fa, fb)
    assert np.array_equal(permute_rows_cols(fa, r, c), fb)


# -- generators --------------------------------------------------------------


@pytest.mark.parametrize("rows, cols, n, m", [(3, 3, 9, 18), (3, 4, 12, 24), (20, 20, 400, 800)])
def test_torus_counts(rows, cols, n, m):
    g = torus_lattice(rows, cols)
    assert (g.n, g.m) == (n, m)
    assert np.all(g.degrees() == 4)


def test_torus_neighbors():
    g = torus_lattice(3, 4)
    nbrs = {j for (i, j) in g.edges if i == 0} | {i for (i, j) in g.edges if j == 0}
    assert nbrs == {1, 3, 4, 8}


def test_torus_rejects_small():
    with pytest.raises(ValueError):
        torus_lattice(2, 5)


def test_random_regular_k4():
    g = random_regular(4, 3, 0)
    assert g.m == 6 and np.array_equal(g.adjacency(), complete_graph(4).adjacency())


@pytest.mark.parametrize("n, k, seed", [(8, 3, 1), (100, 4, 0), (51, 6, 2)])
def test_random_regular_degrees(n, k, seed):
    g = random_regular(n, k, seed)
    assert np.all(g.degrees() == k)
    assert g.m == n * k // 2


def test_random_regular_infeasible():
    with pytest.raises(ValueError):
        random_regular(5, 3, 0)
    with pytest.raises(ValueError):
        random_regular(4, 4, 0)


def test_generators_deterministic():
    assert random_regular(40, 4, 9) == random_regular(40, 4, 9)
    assert random_regular(40, 4, 9) != random_regular(40, 4, 10)
    g = torus_lattice(5, 5)
    h1, p1 = scramble(g, 3)
    h2, p2 = scramble(g, 3)
    assert h1 == h2 and np.array_equal(p1, p2)


def test_scramble_is_planted_isomorphism():
    g = torus_lattice(5, 5)
    h, p = scramble(g, 21)
    assert verify_iso(g.adjacency(), h.adjacency(), p)
    k3 = complete_graph(3)
    assert scramble(k3, 0)[0] == k3
