"""Descending and ascending regions, Morse–Smale labels and merge repair."""

from .boundary import boundary_critical_cells, boundary_regions, check_compatible
from .collapse import collapse_residue, collapses_to_critical
from .decomposition import Decomposition, ascending_regions, label_cells, morse_smale
from .descending import (
    ASCENDING,
    DESCENDING,
    MembershipIndex,
    Region,
    build_region,
    complete_cells,
    complete_region,
    critical_order,
    descending_frame,
    descending_regions,
    frame_search,
    membership,
    region_of,
)
from .merges import (
    MergePoint,
    RepairReport,
    detect_merges,
    frame_region,
    push_merge,
    repair_to_disks,
)

__all__ = [
    "ASCENDING",
    "DESCENDING",
    "Decomposition",
    "MembershipIndex",
    "MergePoint",
    "Region",
    "RepairReport",
    "ascending_regions",
    "boundary_critical_cells",
    "boundary_regions",
    "build_region",
    "check_compatible",
    "collapse_residue",
    "collapses_to_critical",
    "complete_cells",
    "complete_region",
    "critical_order",
    "descending_frame",
    "descending_regions",
    "detect_merges",
    "frame_region",
    "frame_search",
    "label_cells",
    "membership",
    "morse_smale",
    "push_merge",
    "region_of",
    "repair_to_disks",
]
