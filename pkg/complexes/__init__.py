"""Cell complexes: representation, builders, dual, boundary and statistics."""

from .builders import build_cubical, build_simplicial, from_incidence
from .cells import (
    CellComplex,
    ComplexStats,
    boundary_subcomplex,
    dual,
    euler_characteristic,
    stats,
)

__all__ = [
    "CellComplex",
    "ComplexStats",
    "boundary_subcomplex",
    "build_cubical",
    "build_simplicial",
    "dual",
    "euler_characteristic",
    "from_incidence",
    "stats",
]
