"""Radial configuration solver for distribution networks."""

from ._radial import (
    Error,
    InfeasibleError,
    InputError,
    Network,
    StructureError,
    count_spanning_trees,
    fixture,
    fixture_names,
    generate_ws,
    oracle,
    partition_reduction_instance,
    solve,
    verify,
)

__all__ = [
    "Error",
    "InfeasibleError",
    "InputError",
    "Network",
    "StructureError",
    "count_spanning_trees",
    "fixture",
    "fixture_names",
    "generate_ws",
    "oracle",
    "partition_reduction_instance",
    "solve",
    "verify",
]
