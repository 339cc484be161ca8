"""Row/column permutation equivalence of square matrices via a bipartite embedding.

``F`` is placed in the off-diagonal blocks of ``[[0, F], [F^T, 0]]``; rows of
``F`` become vertices ``0..n-1`` and columns become ``n..2n-1``. An
isomorphism of the two embedded weighted graphs that keeps the blocks apart
splits into a row permutation and a column permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import ISOMORPHIC, NOT_ISOMORPHIC, EngineConfig, IsoResult, RunStats, run
from .graph import as_permutation, build_shifted_weighted, identity_permutation, same_entries

SOLUTION = "solution"
NOT_EQUIVALENT = "not_equivalent_heuristic"
UNDETERMINED = "undetermined"


class BlockViolation(ValueError):
    """An embedded permutation sent a row vertex to a column vertex or back."""


@dataclass(frozen=True)
class FrobeniusSolution:
    row_perm: np.ndarray
    col_perm: np.ndarray

    def apply(self, f) -> np.ndarray:
        """``out[row_perm[i], col_perm[j]] = f[i, j]``."""
        return permute_rows_cols(f, self.row_perm, self.col_perm)


@dataclass
class FrobeniusResult:
    status: str
    solution: FrobeniusSolution | None = None
    reason: str | None = None
    engine: IsoResult | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        sol = self.solution
        return {
            "status": self.status,
            "row_perm": None if sol is None else sol.row_perm.tolist(),
            "col_perm": None if sol is None else sol.col_perm.tolist(),
            "reason": self.reason,
            "stats": None if self.engine is None else self.engine.to_dict(),
        }


def permute_rows_cols(f, row_p, col_p) -> np.ndarray:
    f = np.asarray(f)
    out = np.empty_like(f)
    out[np.ix_(as_permutation(row_p, f.shape[0]), as_permutation(col_p, f.shape[1]))] = f
    return out


def _square(f) -> np.ndarray:
    f = np.asarray(f)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {f.shape}")
    return f


def bipartite_embed(f) -> np.ndarray:
    f = _square(f).astype(float)
    n = f.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = f
    out[n:, :n] = f.T
    return out


def extract_permutations(p, n: int | None = None) -> FrobeniusSolution:
    p = as_permutation(p)
    if p.size % 2:
        raise ValueError("embedded permutation must have even size")
    n = p.size // 2 if n is None else n
    rows, cols = p[:n], p[n:]
    if np.any(rows >= n) or np.any(cols < n):
        raise BlockViolation("permutation mixes row and column vertices")
    return FrobeniusSolution(rows.copy(), cols - n)


def _is_constant(f) -> bool:
    return f.size == 0 or bool(np.all(f == f.flat[0]))


def embedding_scale(f) -> float:
    """Largest absolute row or column sum; identical for equivalent matrices."""
    f = np.abs(np.asarray(f, dtype=float))
    if f.size == 0:
        return 0.0
    return float(max(f.sum(axis=0).max(), f.sum(axis=1).max()))


def solve_frobenius(fa, fb, cfg: EngineConfig | None = None) -> FrobeniusResult:
    """Look for ``row_p``, ``col_p`` with ``fb[row_p[i], col_p[j]] == fa[i, j]``.

    Both inputs are divided by the same scale before embedding, so the shifted
    matrices have unit dominance constant and the engine tolerances act on
    ``O(1)`` quantities. Verification always runs on the raw inputs.
    """
    fa, fb = _square(fa), _square(fb)
    if fa.shape != fb.shape:
        raise ValueError(f"shape mismatch: {fa.shape} vs {fb.shape}")
    n = fa.shape[0]

    if _is_constant(fa) and _is_constant(fb):
        if n == 0 or same_entries(fa.flat[0:1], fb.flat[0:1]):
            ident = identity_permutation(n)
            return FrobeniusResult(SOLUTION, FrobeniusSolution(ident, ident.copy()))
        return FrobeniusResult(NOT_EQUIVALENT, reason="constant matrices with different values")

    scale = embedding_scale(fa)
    if not same_entries(np.array([scale]), np.array([embedding_scale(fb)])):
        return FrobeniusResult(NOT_EQUIVALENT, reason="row/column sum profiles differ")
    a = build_shifted_weighted(bipartite_embed(fa / scale))
    b = build_shifted_weighted(bipartite_embed(fb / scale))
    res = run(a, b, cfg)

    if res.verdict == NOT_ISOMORPHIC:
        return FrobeniusResult(NOT_EQUIVALENT, reason=res.reason, engine=res)
    if res.verdict != ISOMORPHIC:
        return FrobeniusResult(UNDETERMINED, reason=res.reason, engine=res)
    try:
        sol = extract_permutations(res.permutation, n)
    except BlockViolation as exc:
        return FrobeniusResult(UNDETERMINED, reason=str(exc), engine=res)
    if not same_entries(sol.apply(fa), fb):
        return FrobeniusResult(UNDETERMINED, reason="extracted permutations failed verification",
                               engine=res)
    return FrobeniusResult(SOLUTION, sol, engine=res)
