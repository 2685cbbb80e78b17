"""Simplify stage - cancels close critical pairs."""

from typing import Any

from langchain_core.messages import AIMessage

from errors import MorseError, describe
from morse import simplify_with_log


def simplify_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Cancel uniquely connected critical pairs below the configured threshold.

    Args:
        state: Pipeline state containing complex, field, function and config

    Returns:
        State updates with:
            - field: Simplified GradientField
            - cancelled: (σ, τ) pairs in cancellation order
            - messages: List with the stage message
    """
    threshold = state["config"].simplify_threshold
    if threshold <= 0:
        return {"cancelled": [], "messages": [AIMessage(content="Simplification skipped")]}

    field_ = state["field"]
    try:
        simplified, cancelled = simplify_with_log(
            state["complex"], field_, threshold, state["function"]
        )
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Simplification failed: {e}")],
        }

    return {
        "field": simplified,
        "cancelled": cancelled,
        "messages": [
            AIMessage(
                content=f"Cancelled {len(cancelled)} pairs below {threshold}; "
                        f"{len(simplified.critical)} critical cells remain"
            )
        ],
    }
