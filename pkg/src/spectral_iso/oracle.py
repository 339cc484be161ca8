"""Exhaustive ground truth for small instances."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .graph import apply_permutation, same_entries

MAX_ISO_N = 10
MAX_FROBENIUS_N = 6


def brute_force_iso(a0, b0) -> np.ndarray | None:
    """First permutation in lexicographic order with ``apply_permutation(a0, p) == b0``."""
    a0, b0 = np.asarray(a0), np.asarray(b0)
    n = a0.shape[0]
    if n > MAX_ISO_N:
        raise ValueError(f"brute force limited to n <= {MAX_ISO_N}, got {n}")
    if a0.shape != b0.shape:
        return None
    # cheap necessary condition prunes most non-isomorphic pairs
    if not same_entries(np.sort(a0.sum(axis=1)), np.sort(b0.sum(axis=1))):
        return None
    for p in permutations(range(n)):
        if same_entries(apply_permutation(a0, p), b0):
            return np.array(p, dtype=np.int64)
    return None


def brute_force_frobenius(fa, fb) -> tuple[np.ndarray, np.ndarray] | None:
    """First ``(row_p, col_p)`` with ``fb[row_p[i], col_p[j]] == fa[i, j]``, or None."""
    fa, fb = np.asarray(fa), np.asarray(fb)
    n = fa.shape[0]
    if n > MAX_FROBENIUS_N:
        raise ValueError(f"brute force limited to n <= {MAX_FROBENIUS_N}, got {n}")
    if fa.shape != fb.shape:
        return None
    perms = [np.array(p, dtype=np.int64) for p in permutations(range(n))]
    for r in perms:
        rows = fb[r]
        for c in perms:
            # fb[r[i], c[j]] == fa[i, j]
            if same_entries(rows[:, c], fa):
                return r, c
    return None
