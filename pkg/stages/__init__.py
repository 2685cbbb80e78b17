"""Pipeline stage nodes for the decomposition workflow."""

from .gradient import gradient_node
from .loader import loader_node
from .regions import ascending_node, regions_node
from .repair import repair_node
from .routing import routing_node
from .simplify import simplify_node
from .stats import stats_node

__all__ = [
    "ascending_node",
    "gradient_node",
    "loader_node",
    "regions_node",
    "repair_node",
    "routing_node",
    "simplify_node",
    "stats_node",
]
