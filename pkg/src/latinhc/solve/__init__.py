"""Complete decision procedures for layers, extensions and completions."""

from .budget import Budget, Tracker
from .layers import (
    avoidable,
    completion,
    decompose,
    extension,
    find_layer,
    intersects,
    is_completable,
    is_extendible,
    is_layerable,
)
from .matching import complete_rectangle
from .regularity import DeltaReport, delta_regularity, delta_regularity_bruteforce
from .search import (
    Kind,
    ThresholdResult,
    compute_threshold,
    search,
    search_noncompletable,
    search_nonextendible,
)

__all__ = [
    "Budget",
    "DeltaReport",
    "Kind",
    "ThresholdResult",
    "Tracker",
    "avoidable",
    "complete_rectangle",
    "completion",
    "compute_threshold",
    "decompose",
    "delta_regularity",
    "delta_regularity_bruteforce",
    "extension",
    "find_layer",
    "intersects",
    "is_completable",
    "is_extendible",
    "is_layerable",
    "search",
    "search_noncompletable",
    "search_nonextendible",
]
