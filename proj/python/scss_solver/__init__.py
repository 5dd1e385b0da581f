"""Solvers for the strongly connected Steiner subgraph problem and its relatives."""

import json

from ._core import (
    Digraph,
    ScssError,
    brute_scss,
    decide,
    heuristic_td,
    kernelize,
    lift_solution,
    minplus_subset_convolution,
    parse_instance,
    setcover_to_scss,
    solve_ecss,
    solve_exact,
    solve_meg,
    solve_text,
    subset_convolution_gf2,
)


def solve(instance, engine="auto", td=None, trials=30, seed=0, emit_solution=False, width_cap=7, exact_cap=16):
    """Solve an instance in the text format and return the result record as a dict."""
    return json.loads(
        solve_text(instance, engine, td, trials, seed, emit_solution, width_cap, exact_cap)
    )


__all__ = [
    "Digraph",
    "ScssError",
    "brute_scss",
    "decide",
    "heuristic_td",
    "kernelize",
    "lift_solution",
    "minplus_subset_convolution",
    "parse_instance",
    "setcover_to_scss",
    "solve",
    "solve_ecss",
    "solve_exact",
    "solve_meg",
    "solve_text",
    "subset_convolution_gf2",
]
