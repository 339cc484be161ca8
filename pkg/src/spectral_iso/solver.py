"""Basis-vector solves ``A x = e_j`` for strictly diagonally dominant SPD matrices.

Two routes are provided. :class:`Factorization` is the baseline: a Cholesky
factor of one :class:`~spectral_iso.graph.ShiftedMatrix` revision.
:class:`InverseTracker` keeps the full inverse of a matrix that only ever
receives diagonal bumps, applying a Sherman-Morrison update per bump and
refactoring from scratch every ``refresh_every`` bumps so rounding drift stays
well below the residual bound.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg

from .graph import DegenerateMatrixError, ShiftedMatrix

#: residual bound ||A x - e_j|| <= RESIDUAL_TOL * ||x|| every solve must honor
RESIDUAL_TOL = 1e-10


class StaleFactorizationError(RuntimeError):
    """The matrix changed revision after the factorization was built."""


class Factorization:
    def __init__(self, sm: ShiftedMatrix):
        if sm.degenerate:
            raise DegenerateMatrixError(
                f"matrix is not strictly diagonally dominant (margin {sm.margin:g})"
            )
        self.n = sm.n
        self.revision = sm.revision
        self._source = sm
        try:
            self._cho = linalg.cho_factor(sm.dense(), lower=True, check_finite=True)
        except linalg.LinAlgError as exc:
            raise DegenerateMatrixError("matrix is numerically not positive definite") from exc

    def check(self, sm: ShiftedMatrix) -> None:
        """Raise if ``sm`` is not the exact revision this factorization was built from."""
        src = self._source
        if sm is src:
            return
        if sm.revision != self.revision or not (
            np.array_equal(sm.perturb, src.perturb)
            and np.array_equal(sm.shift, src.shift)
            and np.array_equal(sm.base, src.base)
        ):
            raise StaleFactorizationError(
                f"factorization is for revision {self.revision}, matrix is at {sm.revision}"
            )

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self._cho, rhs, check_finite=False)

    def solve_basis(self, j: int, sm: ShiftedMatrix | None = None) -> np.ndarray:
        if not 0 <= j < self.n:
            raise IndexError(f"basis index {j} out of range for n={self.n}")
        if sm is not None:
            self.check(sm)
        e = np.zeros(self.n)
        e[j] = 1.0
        return self.solve(e)

    def solve_all(self, sm: ShiftedMatrix | None = None) -> np.ndarray:
        """Columns of the inverse, as an ``n x n`` array (column ``l`` solves ``A x = e_l``)."""
        if sm is not None:
            self.check(sm)
        inv = self.solve(np.eye(self.n))
        return (inv + inv.T) / 2


def factor(sm: ShiftedMatrix) -> Factorization:
    return Factorization(sm)


def solve_basis(f: Factorization, j: int, sm: ShiftedMatrix | None = None) -> np.ndarray:
    return f.solve_basis(j, sm)


def solve_all(f: Factorization, sm: ShiftedMatrix | None = None) -> list[np.ndarray]:
    inv = f.solve_all(sm)
    return [inv[:, l].copy() for l in range(f.n)]


def residual(a: np.ndarray, x: np.ndarray, j: int) -> float:
    r = a @ x
    r[j] -= 1.0
    return float(np.linalg.norm(r))


class InverseTracker:
    """Explicit inverse of a shifted matrix under successive diagonal bumps."""

    def __init__(self, sm: ShiftedMatrix, refresh_every: int = 32):
        self.refresh_every = refresh_every
        self.factorizations = 0
        self._reset(sm)

    def _reset(self, sm: ShiftedMatrix) -> None:
        self.matrix = sm
        self.inverse = Factorization(sm).solve_all()
        self.factorizations += 1
        self._pending = 0

    @property
    def n(self) -> int:
        return self.matrix.n

    def bump(self, i: int, eps: float) -> None:
        """Add ``eps`` to diagonal entry ``i``."""
        self.matrix = self.matrix.perturbed(i, eps)
        self._pending += 1
        if self._pending >= self.refresh_every:
            self._reset(self.matrix)
            return
        u = self.inverse[:, i].copy()
        self.inverse -= np.outer(u, u) * (eps / (1.0 + eps * u[i]))

    def column(self, j: int) -> np.ndarray:
        return self.inverse[:, j]

    def bumped_columns(self, ks: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
        """Solutions of ``(A + eps e_k e_k^T) y = e_k`` for every ``k`` in ``ks``.

        Returns the solution vectors (one per column) and their ``k``-th entries.
        Sherman-Morrison reduces each to column ``k`` of the current inverse
        divided by ``1 + eps * inv[k, k]``.
        """
        ks = np.asarray(ks, dtype=np.int64)
        diag = self.inverse[ks, ks]
        scale = 1.0 / (1.0 + eps * diag)
        return self.inverse[:, ks] * scale, diag * scale

    def max_residual(self) -> float:
        """Largest relative residual over all columns, for diagnostics."""
        a = self.matrix.dense()
        r = a @ self.inverse - np.eye(self.n)
        return float(np.max(np.linalg.norm(r, axis=0) / np.linalg.norm(self.inverse, axis=0)))
