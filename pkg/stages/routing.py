"""Routing stage - answers the configured start/target query."""

from typing import Any

from langchain_core.messages import AIMessage

from errors import MorseError, describe
from pathfind import height_cost, hop_cost, route_to_maximum


def routing_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Route from the start cell to the target maximum.

    Edge costs are |Δf| when values are known, hop counts otherwise.

    Returns:
        State updates with:
            - route: Route
            - messages: List with the stage message
    """
    start, target = state["config"].route
    function = state.get("function")
    cost = height_cost(function) if function is not None else hop_cost
    try:
        route = route_to_maximum(state["decomposition"], state["complex"], start, target, cost=cost)
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Routing failed: {e}")],
        }

    return {
        "route": route,
        "messages": [
            AIMessage(
                content=f"Route of {len(route.cells)} cells via {list(route.waypoints)}, "
                        f"cost {route.cost:.4g}"
            )
        ],
    }
