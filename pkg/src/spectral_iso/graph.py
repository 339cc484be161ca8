"""Graph and matrix domain types, SPD shift constructions and exact verification.

Matrices are plain ``numpy`` arrays. Symmetric inputs are checked on entry;
a :class:`ShiftedMatrix` carries the adjacency (``base``), the diagonal shift
that makes it strictly diagonally dominant, and the diagonal perturbations
accumulated by the splitting engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

#: absolute tolerance used when comparing real-valued (non integer coded) weights
WEIGHT_TOL = 1e-9


class DegenerateMatrixError(ValueError):
    """Raised when a shifted matrix is not strictly diagonally dominant."""


class AsymmetricMatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


def as_permutation(p: Sequence[int] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Validate ``p`` as a bijection of ``range(len(p))`` and return it as an int array."""
    arr = np.asarray(p, dtype=np.int64).reshape(-1)
    if n is not None and arr.size != n:
        raise ValueError(f"permutation has size {arr.size}, expected {n}")
    if not np.array_equal(np.sort(arr), np.arange(arr.size)):
        raise ValueError("not a permutation: entries must be a rearrangement of 0..n-1")
    return arr


def inverse_permutation(p: Sequence[int] | np.ndarray) -> np.ndarray:
    p = as_permutation(p)
    inv = np.empty_like(p)
    inv[p] = np.arange(p.size)
    return inv


def identity_permutation(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``0..n-1`` with optional edge weights.

    ``edges`` maps the normalized pair ``(i, j)`` with ``i < j`` to its weight.
    """

    n: int
    edges: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized: dict[tuple[int, int], float] = {}
        for (i, j), w in dict(self.edges).items():
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            key = (min(i, j), max(i, j))
            if key in normalized and normalized[key] != w:
                raise AsymmetricMatrixError(f"edge {key} given twice with different weights")
            normalized[key] = float(w)
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int] | tuple[int, int, float]]) -> "Graph":
        table: dict[tuple[int, int], float] = {}
        for e in edges:
            i, j = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            key = (min(i, j), max(i, j))
            if key in table and table[key] != w:
                raise AsymmetricMatrixError(f"edge {key} given twice with different weights")
            table[key] = w
        return cls(n, table)

    @classmethod
    def from_adjacency(cls, m: np.ndarray) -> "Graph":
        m = check_symmetric(m)
        if np.any(np.diag(m) != 0):
            raise ValueError("adjacency matrix has nonzero diagonal (self-loops)")
        iu, ju = np.nonzero(np.triu(m, 1))
        return cls(m.shape[0], {(int(i), int(j)): float(m[i, j]) for i, j in zip(iu, ju)})

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return any(w != 1.0 for w in self.edges.values())

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for (i, j), w in self.edges.items():
            a[i, j] = a[j, i] = w
        return a

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def relabel(self, p: Sequence[int] | np.ndarray) -> "Graph":
        """Copy of the graph with vertex ``i`` renamed to ``p[i]``."""
        p = as_permutation(p, self.n)
        return Graph(self.n, {(int(p[i]), int(p[j])): w for (i, j), w in self.edges.items()})


# ---------------------------------------------------------------------------
# shifted matrices


def check_symmetric(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise AsymmetricMatrixError("matrix is not symmetric")
    return a


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ShiftedMatrix:
    """Working matrix ``base + diag(shift) + diag(perturb)``.

    Immutable: :meth:`perturbed` returns a new instance with the revision
    counter advanced, which is what factorizations are checked against.
    """

    base: np.ndarray
    shift: np.ndarray
    perturb: np.ndarray
    revision: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", _frozen(self.base))
        object.__setattr__(self, "shift", _frozen(self.shift))
        object.__setattr__(self, "perturb", _frozen(self.perturb))
        n = self.base.shape[0]
        if self.shift.shape != (n,) or self.perturb.shape != (n,):
            raise ValueError("shift and perturb must be length-n vectors")
        if np.any(self.perturb < 0):
            raise ValueError("perturbations must be non-negative")

    @property
    def n(self) -> int:
        return self.base.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.base) + self.shift + self.perturb

    def dense(self) -> np.ndarray:
        a = np.array(self.base)
        a[np.diag_indices(self.n)] = self.diagonal
        return a

    def off_diagonal_sums(self) -> np.ndarray:
        return np.abs(self.base).sum(axis=1) - np.abs(np.diag(self.base))

    def margins(self) -> np.ndarray:
        """Per-row dominance margin ``a_ii - sum_{j != i} |a_ij|``."""
        return self.diagonal - self.off_diagonal_sums()

    @property
    def margin(self) -> float:
        return float(self.margins().min()) if self.n else np.inf

    @property
    def degenerate(self) -> bool:
        return not self.margin > 0

    def perturbed(self, i: int, eps: float) -> "ShiftedMatrix":
        p = np.array(self.perturb)
        p[i] += eps
        return ShiftedMatrix(self.base, self.shift, p, self.revision + 1)


def build_shifted_unweighted(g: Graph | np.ndarray) -> ShiftedMatrix:
    """Adjacency plus ``diag(degree + 1)``; every row has dominance margin exactly 1."""
    a = g.adjacency() if isinstance(g, Graph) else check_symmetric(g)
    if not np.all((a == 0) | (a == 1)) or np.any(np.diag(a) != 0):
        raise ValueError("unweighted construction needs a 0/1 adjacency matrix without loops")
    n = a.shape[0]
    return ShiftedMatrix(a, a.sum(axis=1) + 1.0, np.zeros(n))


def build_shifted_weighted(m: Graph | np.ndarray) -> ShiftedMatrix:
    """Adjacency plus ``diag(d + r_i)`` where ``r_i`` is the absolute row sum and ``d = max r_i``.

    The all-zero matrix yields a zero working matrix; it is returned (margin 0,
    ``degenerate`` is true) and rejected later by the solver.
    """
    a = m.adjacency() if isinstance(m, Graph) else check_symmetric(m)
    rows = np.abs(a).sum(axis=1)
    d = rows.max() if rows.size else 0.0
    return ShiftedMatrix(a, d + rows, np.zeros(a.shape[0]))


def condition_bound(sm: ShiftedMatrix) -> float:
    """Upper bound ``eta / chi`` on the spectral condition number of a dominant symmetric matrix."""
    diag = sm.diagonal
    off = sm.off_diagonal_sums()
    eta = float(np.max(diag + off))
    chi = float(np.min(diag - off))
    if not chi > 0:
        raise DegenerateMatrixError(f"matrix lost diagonal dominance (chi = {chi:g})")
    return eta / chi


# ---------------------------------------------------------------------------
# permutation action and verification


def apply_permutation(m: np.ndarray, p: Sequence[int] | np.ndarray) -> np.ndarray:
    """Simultaneous row/column relabeling: ``result[p[i], p[j]] = m[i, j]``."""
    m = np.asarray(m)
    p = as_permutation(p, m.shape[0])
    inv = inverse_permutation(p)
    return m[np.ix_(inv, inv)]


def _integer_coded(*arrays: np.ndarray) -> bool:
    # one integer-coded side is enough: equality then forces exact integers on both
    return any(
        np.issubdtype(a.dtype, np.integer) or bool(np.all(a == np.round(a))) for a in arrays
    )


def same_entries(x: np.ndarray, y: np.ndarray, tol: float = WEIGHT_TOL) -> bool:
    """Entry-exact equality for integer-coded arrays, absolute tolerance ``tol`` otherwise."""
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        return False
    if _integer_coded(x, y):
        return bool(np.array_equal(x, y))
    return bool(np.allclose(x, y, rtol=0.0, atol=tol))


def verify_iso(a0: np.ndarray, b0: np.ndarray, p: Sequence[int] | np.ndarray) -> bool:
    """True iff relabeling ``a0`` by ``p`` reproduces ``b0``."""
    a0, b0 = np.asarray(a0), np.asarray(b0)
    if a0.shape != b0.shape:
        return False
    try:
        p = as_permutation(p, a0.shape[0])
    except ValueError:
        return False
    return same_entries(apply_permutation(a0, p), b0)
