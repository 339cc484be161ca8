"""Double permutation (row and column transposition) cipher on square text grids.

Text bytes are coded as ``byte + 1`` so that ``0`` is free for padding, then
written row-major into the smallest square grid that holds them. Cracking
with a known plaintext is a row/column permutation equivalence problem on the
two code matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import EngineConfig
from .frobenius import NOT_EQUIVALENT, SOLUTION, FrobeniusResult, permute_rows_cols, solve_frobenius
from .graph import as_permutation, inverse_permutation

PAD_CODE = 0
ALPHABET_SIZE = 257  # codes 1..256 for bytes, 0 for padding

MATCH = "match"
NO_MATCH = "no_match_heuristic"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TextGrid:
    side: int
    cells: np.ndarray
    length: int
    pad_code: int = PAD_CODE

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int64)
        if cells.shape != (self.side, self.side):
            raise ValueError(f"cells must be {self.side}x{self.side}, got {cells.shape}")
        if cells.size and (cells.min() < 0 or cells.max() >= ALPHABET_SIZE):
            raise ValueError("cell codes outside the alphabet")
        if not 0 <= self.length <= self.side * self.side:
            raise ValueError("length does not fit the grid")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    def __eq__(self, other):
        return (
            isinstance(other, TextGrid)
            and self.side == other.side
            and self.length == other.length
            and np.array_equal(self.cells, other.cells)
        )

    def to_bytes(self) -> bytes:
        """Row-major codes minus one, with padding cells dropped."""
        codes = self.cells.reshape(-1)
        return bytes(int(c) - 1 for c in codes if c != self.pad_code)


def encode_text(text: bytes | str) -> TextGrid:
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    if not data:
        raise ValueError("cannot encode empty text")
    side = math.isqrt(len(data))
    if side * side < len(data):
        side += 1
    flat = np.full(side * side, PAD_CODE, dtype=np.int64)
    flat[: len(data)] = np.frombuffer(data, dtype=np.uint8).astype(np.int64) + 1
    return TextGrid(side, flat.reshape(side, side), len(data))


def _check_perms(g: TextGrid, row_p, col_p):
    try:
        return as_permutation(row_p, g.side), as_permutation(col_p, g.side)
    except ValueError as exc:
        raise ValueError(f"permutations must have size {g.side}: {exc}") from exc


def encrypt(g: TextGrid, row_p, col_p) -> TextGrid:
    """``out[row_p[i], col_p[j]] = g[i, j]``."""
    row_p, col_p = _check_perms(g, row_p, col_p)
    return TextGrid(g.side, permute_rows_cols(g.cells, row_p, col_p), g.length, g.pad_code)


def decrypt(g: TextGrid, row_p, col_p) -> TextGrid:
    row_p, col_p = _check_perms(g, row_p, col_p)
    return encrypt(g, inverse_permutation(row_p), inverse_permutation(col_p))


@dataclass
class CrackResult:
    status: str
    row_perm: np.ndarray | None = None
    col_perm: np.ndarray | None = None
    reason: str | None = None
    frobenius: FrobeniusResult | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "row_perm": None if self.row_perm is None else self.row_perm.tolist(),
            "col_perm": None if self.col_perm is None else self.col_perm.tolist(),
            "reason": self.reason,
            "stats": None if self.frobenius is None else self.frobenius.to_dict()["stats"],
        }


def crack(plain: TextGrid, cipher: TextGrid, cfg: EngineConfig | None = None) -> CrackResult:
    """Recover the row and column permutations that turn ``plain`` into ``cipher``."""
    if plain.side != cipher.side:
        raise ValueError(f"grid sides differ: {plain.side} vs {cipher.side}")
    res = solve_frobenius(plain.cells, cipher.cells, cfg)
    if res.status == NOT_EQUIVALENT:
        return CrackResult(NO_MATCH, reason=res.reason, frobenius=res)
    if res.status != SOLUTION:
        return CrackResult(UNDETERMINED, reason=res.reason, frobenius=res)
    sol = res.solution
    if not np.array_equal(decrypt(cipher, sol.row_perm, sol.col_perm).cells, plain.cells):
        return CrackResult(UNDETERMINED, reason="decryption does not reproduce the plaintext",
                           frobenius=res)
    return CrackResult(MATCH, sol.row_perm, sol.col_perm, frobenius=res)


def sample_text(length: int, seed: int) -> bytes:
    """Seeded pseudo-English: lowercase words from a small vocabulary, space separated."""
    rng = np.random.default_rng(seed)
    words = (
        "the of and to in is was that for it with as his on be at by had are but from or "
        "have an they which one you were her all she there would their we him been has when "
        "who will more no if out so said what up its about into than them can only other new "
        "some could time these two may then do first any my now such like our over man me "
        "even most made after also did many before must through back years where much your way"
    ).split()
    out = bytearray()
    while len(out) < length:
        out += rng.choice(words).encode() + b" "
    return bytes(out[:length])
