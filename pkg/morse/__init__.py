"""Discrete Morse functions, gradient fields, V-paths and cancellation."""

from .extension import (
    ExtensionReport,
    extend_from_vertex_values,
    extend_with_report,
    lower_star_values,
    vertex_ranks,
)
from .field import (
    FieldReport,
    GradientField,
    MorseFunction,
    ab_counts,
    classify,
    function_from_field,
    restrict_field,
    validate_field,
)
from .paths import (
    VPath,
    VPathEnumeration,
    cancel,
    count_connecting_paths,
    enumerate_vpaths,
    simplify,
    simplify_with_log,
)

__all__ = [
    "ExtensionReport",
    "FieldReport",
    "GradientField",
    "MorseFunction",
    "VPath",
    "VPathEnumeration",
    "ab_counts",
    "cancel",
    "classify",
    "count_connecting_paths",
    "enumerate_vpaths",
    "extend_from_vertex_values",
    "extend_with_report",
    "function_from_field",
    "lower_star_values",
    "restrict_field",
    "simplify",
    "simplify_with_log",
    "validate_field",
    "vertex_ranks",
]
