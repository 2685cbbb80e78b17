"""Steepest descent and saddle routing over a decomposition."""

from .routes import (
    Route,
    crossings,
    height_cost,
    hop_cost,
    incidence_graph,
    maxima,
    route_to_maximum,
    saddle_links,
    steepest_descent,
)

__all__ = [
    "Route",
    "crossings",
    "height_cost",
    "hop_cost",
    "incidence_graph",
    "maxima",
    "route_to_maximum",
    "saddle_links",
    "steepest_descent",
]
