"""radolab: countable-set filters, finite topologies, permutation groups,
and seed-reproducible Rado-graph oracles, exactly on finite structures
and window-bounded on countable ones."""

from .errors import BoundedSearchError, RadolabError, ResourceLimitError, UsageError
from .filters import FilterBase, base_is_nontrivial, filter_contains, filter_refines
from .sets import OmegaSet, TriState, intersect_all, is_subset

__version__ = "0.1.0"

__all__ = [
    "BoundedSearchError",
    "FilterBase",
    "OmegaSet",
    "RadolabError",
    "ResourceLimitError",
    "TriState",
    "UsageError",
    "base_is_nontrivial",
    "filter_contains",
    "filter_refines",
    "intersect_all",
    "is_subset",
]
