"""Solvers for single-sided VASS parity games."""

from ._core import (
    BudgetExceeded,
    Game,
    LTS,
    check,
    format_formula,
    global_model_check,
    model_check,
    oracle,
    pareto,
    pareto_energy,
    parse_game,
    parse_lts,
    solve_abstract,
    weaksim,
)

__all__ = [
    "BudgetExceeded",
    "Game",
    "LTS",
    "check",
    "format_formula",
    "global_model_check",
    "model_check",
    "oracle",
    "pareto",
    "pareto_energy",
    "parse_game",
    "parse_lts",
    "solve_abstract",
    "weaksim",
]
