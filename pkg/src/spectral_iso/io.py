"""Plain-text graph files and CSV matrices.

Graph files: first line ``n m``, then ``m`` lines ``i j [w]`` with 0-based
vertex indices. Blank lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .graph import AsymmetricMatrixError, Graph


class FormatError(ValueError):
    pass


def parse_graph(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty graph file")
    try:
        n, m = (int(t) for t in lines[0])
    except ValueError as exc:
        raise FormatError(f"header must be 'n m', got {' '.join(lines[0])!r}") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"header announces {m} edges, file has {len(lines) - 1}")
    edges = []
    for lineno, parts in enumerate(lines[1:], start=2):
        if len(parts) not in (2, 3):
            raise FormatError(f"line {lineno}: expected 'i j [w]'")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        edges.append((i, j, w))
    try:
        return Graph.from_edges(n, edges)
    except AsymmetricMatrixError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    for (i, j), w in sorted(g.edges.items()):
        out.append(f"{i} {j}" if w == 1.0 else f"{i} {j} {w!r}")
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))


def parse_matrix(text: str, symmetric: bool = False) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise FormatError("empty matrix file")
    try:
        m = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise FormatError(f"non-numeric entry: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise FormatError(f"matrix must be square, got {len(rows)} rows of lengths "
                          f"{sorted({len(r) for r in rows})}")
    if symmetric and not np.array_equal(m, m.T):
        raise AsymmetricMatrixError("matrix is not symmetric")
    if np.all(m == np.round(m)):
        m = m.astype(np.int64)
    return m


def format_matrix(m) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(m):
        w.writerow([repr(x.item()) if isinstance(x, np.floating) else int(x) for x in row])
    return buf.getvalue()


def read_matrix(path, symmetric: bool = False) -> np.ndarray:
    return parse_matrix(Path(path).read_text(), symmetric=symmetric)


def write_matrix(m, path) -> None:
    Path(path).write_text(format_matrix(m))


def read_permutation(path_or_json: str) -> list[int]:
    """A JSON array, given inline or as a file path."""
    p = Path(path_or_json)
    text = p.read_text() if p.exists() else path_or_json
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"permutation is not valid JSON: {exc}") from exc
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise FormatError("permutation must be a JSON array of integers")
    return value
