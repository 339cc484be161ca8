"""JSON Schemas for the reports the CLI prints."""

_perm = {"anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer", "minimum": 0}}]}
_opt_int = {"anyOf": [{"type": "null"}, {"type": "integer", "minimum": 0}]}
_opt_str = {"anyOf": [{"type": "null"}, {"type": "string"}]}

ISO_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "isomorphism run report",
    "type": "object",
    "required": ["verdict", "permutation", "witness", "reason", "schema", "iterations",
                 "split_iteration", "solve_count", "ambiguity_count", "factorizations", "wall_time"],
    "properties": {
        "verdict": {"enum": ["isomorphic", "not_isomorphic_heuristic", "undetermined"]},
        "permutation": _perm,
        "witness": _opt_int,
        "reason": _opt_str,
        "schema": {"enum": ["first", "second"]},
        "iterations": {"type": "integer", "minimum": 0},
        "split_iteration": _opt_int,
        "solve_count": {"type": "integer", "minimum": 0},
        "ambiguity_count": {"type": "integer", "minimum": 0},
        "factorizations": {"type": "integer", "minimum": 0},
        "wall_time": {"type": "number", "minimum": 0},
    },
}

FROBENIUS_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "permutation equivalence report",
    "type": "object",
    "required": ["status", "row_perm", "col_perm", "reason", "stats"],
    "properties": {
        "status": {"enum": ["solution", "not_equivalent_heuristic", "undetermined"]},
        "row_perm": _perm,
        "col_perm": _perm,
        "reason": _opt_str,
        "stats": {"anyOf": [{"type": "null"}, ISO_REPORT]},
    },
}

CRACK_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "cipher crack report",
    "type": "object",
    "required": ["status", "row_perm", "col_perm", "reason", "stats"],
    "properties": {
        "status": {"enum": ["match", "no_match_heuristic", "undetermined"]},
        "row_perm": _perm,
        "col_perm": _perm,
        "reason": _opt_str,
        "stats": {"anyOf": [{"type": "null"}, ISO_REPORT]},
        "recovered_text": {"type": "string"},
    },
}
