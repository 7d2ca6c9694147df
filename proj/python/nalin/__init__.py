"""Finite groups, their representations and Max-3-LIN tools."""

from ._nalin import (
    Error,
    Group,
    LinInstance,
    a5_irreps_available,
    brute_force,
    dictatorship_test,
    folklore_approx,
    generate_planted,
    load_group,
    parse_instance,
    reduce_planted,
    solve_mod,
)

__all__ = [
    "Error",
    "Group",
    "LinInstance",
    "a5_irreps_available",
    "brute_force",
    "dictatorship_test",
    "folklore_approx",
    "generate_planted",
    "load_group",
    "parse_instance",
    "reduce_planted",
    "solve_mod",
]
