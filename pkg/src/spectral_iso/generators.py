"""Seeded instance generators: torus lattices, random regular graphs, planted relabelings."""

from __future__ import annotations

import numpy as np

from .graph import Graph, as_permutation


def torus_lattice(rows: int, cols: int) -> Graph:
    """``rows x cols`` grid with wraparound; vertex ``(r, c)`` has index ``r * cols + c``."""
    if rows < 3 or cols < 3:
        raise ValueError("torus dimensions must be at least 3 to avoid multi-edges")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            edges.append((v, r * cols + (c + 1) % cols))
            edges.append((v, ((r + 1) % rows) * cols + c))
    return Graph.from_edges(rows * cols, edges)


def random_regular(n: int, k: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Simple ``k``-regular graph on ``n`` vertices from the pairing model.

    Stubs are shuffled and paired; a pairing with a loop or a repeated edge is
    rejected and redrawn. For ``k`` much larger than 4 rejection becomes slow,
    so stubs that fail are reshuffled among themselves before a full restart.
    """
    if (n * k) % 2:
        raise ValueError("n * k must be even")
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        edges = _try_pairing(n, k, rng)
        if edges is not None:
            return Graph.from_edges(n, edges)
    raise RuntimeError(f"pairing model failed {max_tries} times for n={n}, k={k}")


def _try_pairing(n, k, rng):
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), k)
    while stubs.size:
        rng.shuffle(stubs)
        left = []
        for s, t in zip(stubs[0::2], stubs[1::2]):
            e = (min(s, t), max(s, t))
            if s != t and e not in edges:
                edges.add(e)
            else:
                left += [s, t]
        if len(left) == stubs.size:
            # no progress: only loops or repeats remain possible
            return None
        stubs = np.array(left, dtype=np.int64)
    return [(int(i), int(j)) for i, j in sorted(edges)]


def random_permutation(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).permutation(n)


def scramble(g: Graph, seed: int) -> tuple[Graph, np.ndarray]:
    """Relabel ``g`` by a seeded random permutation ``p`` (vertex ``i`` becomes ``p[i]``)."""
    p = as_permutation(random_permutation(g.n, seed))
    return g.relabel(p), p


def gnp(n: int, prob: float, seed: int) -> Graph:
    """Erdos-Renyi graph, used for small randomized test instances."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < prob
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))
