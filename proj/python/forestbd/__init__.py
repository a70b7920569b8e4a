"""Backdoors into acyclic CNF formulas."""

from ._core import (
    ContractError,
    Error,
    Formula,
    ParseError,
    ResourceGuardError,
    count,
    count_acyclic,
    detect,
    detect_deletion,
    detect_strong,
    detect_weak,
    gen_grid,
    gen_hitting_set,
    gen_random,
    oracle,
    run_cli,
    solve_acyclic,
    verify,
    weak_witness,
)

__all__ = [
    "ContractError",
    "Error",
    "Formula",
    "ParseError",
    "ResourceGuardError",
    "count",
    "count_acyclic",
    "detect",
    "detect_deletion",
    "detect_strong",
    "detect_weak",
    "gen_grid",
    "gen_hitting_set",
    "gen_random",
    "oracle",
    "run_cli",
    "solve_acyclic",
    "verify",
    "weak_witness",
]
