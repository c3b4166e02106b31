"""Latin hypercuboids, (n^d, k)-arrays of sets, and complete searches for
layers, extensions and completions."""

__version__ = "0.1.0"

from .core import (
    ConstraintArray,
    Hypercuboid,
    Layer,
    PartialAssignment,
    SetArray,
    Shape,
    SolveOutcome,
    Status,
    SymbolSet,
    is_extension_of,
    is_layer_of,
    validate_hypercuboid,
    validate_layer,
    validate_set_array,
)

__all__ = [
    "ConstraintArray",
    "Hypercuboid",
    "Layer",
    "PartialAssignment",
    "SetArray",
    "Shape",
    "SolveOutcome",
    "Status",
    "SymbolSet",
    "is_extension_of",
    "is_layer_of",
    "validate_hypercuboid",
    "validate_layer",
    "validate_set_array",
]
