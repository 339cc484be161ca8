"""Command-line entry point.

Exit codes: 0 isomorphic / equivalent / match / success, 1 heuristic
negative verdict, 2 undetermined, 3 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import cipher, io
from .bench import compare_schemas
from .engine import ISOMORPHIC, NOT_ISOMORPHIC, EngineConfig, compare_graphs
from .frobenius import NOT_EQUIVALENT, SOLUTION, solve_frobenius
from .generators import random_permutation, random_regular, scramble, torus_lattice

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDETERMINED, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--schema", choices=("first", "second"), default="second")
    p.add_argument("--epsilon", type=float, default=1.0, help="perturbation magnitude (default 1.0)")
    p.add_argument("--tau", type=float, default=1e-6, help="relative match tolerance (default 1e-6)")
    p.add_argument("--schedule", choices=("graded", "constant"), default="graded")
    p.add_argument("--strict", action="store_true", help="also compare sorted solution components")
    p.add_argument("--backend", choices=("update", "direct"), default="update")
    p.add_argument("--threads", type=int, default=None, help="parallelism cap (default: all cores)")
    p.add_argument("--report", type=Path, default=None, help="also write the JSON report here")


def _config(args) -> EngineConfig:
    return EngineConfig(
        epsilon=args.epsilon,
        tau_match=args.tau,
        schema=args.schema,
        strict=args.strict,
        backend=args.backend,
        schedule=args.schedule,
        threads=args.threads or os.cpu_count() or 1,
    )


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2)
    print(text)
    if getattr(args, "report", None):
        args.report.write_text(text + "\n")


def cmd_iso(args) -> int:
    ga, gb = io.read_graph(args.graph_a), io.read_graph(args.graph_b)
    res = compare_graphs(ga, gb, _config(args))
    _emit(res.to_dict(), args)
    return {ISOMORPHIC: EXIT_OK, NOT_ISOMORPHIC: EXIT_NEGATIVE}.get(res.verdict, EXIT_UNDETERMINED)


def cmd_frobenius(args) -> int:
    fa, fb = io.read_matrix(args.mat_a), io.read_matrix(args.mat_b)
    if fa.shape != fb.shape:
        raise UsageError(f"matrix sizes differ: {fa.shape} vs {fb.shape}")
    res = solve_frobenius(fa, fb, _config(args))
    _emit(res.to_dict(), args)
    return {SOLUTION: EXIT_OK, NOT_EQUIVALENT: EXIT_NEGATIVE}.get(res.status, EXIT_UNDETERMINED)


def _read_grid(path: Path) -> cipher.TextGrid:
    if path.suffix == ".csv":
        cells = io.read_matrix(path)
        return cipher.TextGrid(cells.shape[0], cells, int(np.count_nonzero(cells != cipher.PAD_CODE)))
    return cipher.encode_text(path.read_bytes())


def _write_grid(g: cipher.TextGrid, path: Path) -> None:
    if path.suffix == ".csv":
        io.write_matrix(g.cells, path)
    elif g.length != g.side * g.side:
        raise UsageError("text length is not a perfect square; write the ciphertext to a .csv file "
                         "so padding cells keep their positions")
    else:
        path.write_bytes(bytes(int(c) - 1 for c in g.cells.reshape(-1)))


def cmd_cipher_encrypt(args) -> int:
    g = cipher.encode_text(args.input.read_bytes())
    row_p = io.read_permutation(args.row_perm) if args.row_perm else random_permutation(g.side, args.seed)
    col_p = io.read_permutation(args.col_perm) if args.col_perm else random_permutation(g.side, args.seed + 1)
    try:
        enc = cipher.encrypt(g, row_p, col_p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write_grid(enc, args.output)
    _emit({"side": g.side, "row_perm": [int(v) for v in row_p], "col_perm": [int(v) for v in col_p],
           "output": str(args.output)}, args)
    return EXIT_OK


def cmd_cipher_crack(args) -> int:
    plain, ct = _read_grid(args.plain), _read_grid(args.cipher)
    if plain.side != ct.side:
        raise UsageError(f"grid sides differ: {plain.side} vs {ct.side}")
    res = cipher.crack(plain, ct, _config(args))
    report = res.to_dict()
    if res.status == cipher.MATCH:
        recovered = cipher.decrypt(ct, res.row_perm, res.col_perm)
        assert recovered == plain
        report["recovered_text"] = recovered.to_bytes().decode("utf-8", errors="replace")
    _emit(report, args)
    return {cipher.MATCH: EXIT_OK, cipher.NO_MATCH: EXIT_NEGATIVE}.get(res.status, EXIT_UNDETERMINED)


def cmd_gen(args) -> int:
    report: dict = {"family": args.family, "output": str(args.output)}
    if args.family == "torus":
        g = torus_lattice(args.rows, args.cols)
    elif args.family == "regular":
        g = random_regular(args.n, args.k, args.seed)
    else:
        if args.input is None:
            raise UsageError("scramble needs --input")
        g, p = scramble(io.read_graph(args.input), args.seed)
        report["permutation"] = p.tolist()
    io.write_graph(g, args.output)
    report.update(n=g.n, m=g.m)
    print(json.dumps(report))
    return EXIT_OK


def cmd_bench(args) -> int:
    res = compare_schemas(args.sizes, _config(args), args.repeats)
    _emit(res, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-iso", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iso", help="test two graph files for isomorphism")
    p.add_argument("graph_a", type=Path)
    p.add_argument("graph_b", type=Path)
    _engine_flags(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("frobenius", help="row/column permutation equivalence of two CSV matrices")
    p.add_argument("mat_a", type=Path)
    p.add_argument("mat_b", type=Path)
    _engine_flags(p)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("cipher", help="double permutation cipher")
    csub = p.add_subparsers(dest="action", required=True)
    e = csub.add_parser("encrypt")
    e.add_argument("input", type=Path)
    e.add_argument("output", type=Path, help="raw bytes, or code matrix if the name ends in .csv")
    e.add_argument("--row-perm", help="JSON array or file; seeded random if omitted")
    e.add_argument("--col-perm", help="JSON array or file; seeded random if omitted")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--report", type=Path, default=None)
    e.set_defaults(func=cmd_cipher_encrypt)
    c = csub.add_parser("crack")
    c.add_argument("plain", type=Path)
    c.add_argument("cipher", type=Path)
    _engine_flags(c)
    c.set_defaults(func=cmd_cipher_crack)

    p = sub.add_parser("gen", help="write a generated graph file")
    p.add_argument("family", choices=("torus", "regular", "scramble"))
    p.add_argument("output", type=Path)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", type=Path, default=None, help="graph to scramble")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time both schemas on scrambled torus lattices")
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 144, 256, 400])
    p.add_argument("--repeats", type=int, default=3)
    _engine_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, io.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
