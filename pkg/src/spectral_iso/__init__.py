"""Graph isomorphism, matrix permutation equivalence and transposition cipher
cracking by spectral splitting of diagonally perturbed SPD matrices."""

from .engine import (
    EngineConfig,
    IsoResult,
    check_full_split,
    compare_graphs,
    match_candidates,
    run,
    run_first_schema,
    run_second_schema,
)
from .frobenius import FrobeniusSolution, bipartite_embed, extract_permutations, solve_frobenius
from .graph import (
    Graph,
    ShiftedMatrix,
    apply_permutation,
    build_shifted_unweighted,
    build_shifted_weighted,
    condition_bound,
    verify_iso,
)

__all__ = [
    "EngineConfig",
    "FrobeniusSolution",
    "Graph",
    "IsoResult",
    "ShiftedMatrix",
    "apply_permutation",
    "bipartite_embed",
    "build_shifted_unweighted",
    "build_shifted_weighted",
    "check_full_split",
    "compare_graphs",
    "condition_bound",
    "extract_permutations",
    "match_candidates",
    "run",
    "run_first_schema",
    "run_second_schema",
    "solve_frobenius",
    "verify_iso",
]
