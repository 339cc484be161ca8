"""Wall-time measurements on torus lattices and power-law fits."""

from __future__ import annotations

import math
import time
from dataclasses import replace

import numpy as np

from .engine import EngineConfig, compare_graphs
from .generators import scramble, torus_lattice


def fit_power_law(ns, times) -> float:
    """Least-squares exponent ``b`` of ``t = a * n**b`` in log-log space."""
    ns, times = np.asarray(ns, dtype=float), np.asarray(times, dtype=float)
    if ns.size < 2:
        raise ValueError("need at least two sizes to fit an exponent")
    slope, _ = np.polyfit(np.log(ns), np.log(times), 1)
    return float(slope)


def time_torus(sizes, cfg: EngineConfig, repeats: int = 3, seed: int = 0) -> list[dict]:
    """Best-of-``repeats`` engine time for a scrambled ``s x s`` torus per vertex count.

    Each entry of ``sizes`` must be a perfect square vertex count.
    """
    rows = []
    for n in sizes:
        side = math.isqrt(n)
        if side * side != n:
            raise ValueError(f"{n} is not a square vertex count")
        g = torus_lattice(side, side)
        h, _ = scramble(g, seed + n)
        best, res = math.inf, None
        for _ in range(repeats):
            t0 = time.perf_counter()
            res = compare_graphs(g, h, cfg)
            best = min(best, time.perf_counter() - t0)
        rows.append({
            "n": n,
            "schema": cfg.schema,
            "seconds": best,
            "verdict": res.verdict,
            "split_iteration": res.stats.split_iteration,
        })
    return rows


def compare_schemas(sizes, cfg: EngineConfig | None = None, repeats: int = 3) -> dict:
    cfg = cfg or EngineConfig()
    out = {}
    for schema in ("first", "second"):
        rows = time_torus(sizes, replace(cfg, schema=schema), repeats)
        out[schema] = {
            "rows": rows,
            "exponent": fit_power_law([r["n"] for r in rows], [r["seconds"] for r in rows]),
        }
    return out
