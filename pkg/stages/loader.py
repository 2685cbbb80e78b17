"""Loader stage - reads the complex and its scalar data."""

import time
from typing import Any

from langchain_core.messages import AIMessage

from errors import MorseError, describe
from providers import load_input


def loader_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Read the input named by the run configuration.

    Args:
        state: Pipeline state containing:
            - config: RunConfig with input path, format and values path

    Returns:
        State updates with:
            - complex: CellComplex
            - vertex_values: Value per 0-cell id or None
            - field: GradientField from field JSON or None
            - function: Per-cell values from field JSON or None
            - messages: List with the loader's message
        or ``error`` when the input cannot be read

    Example:
        >>> result = loader_node({"config": RunConfig("stats", "square.off", "off")})
        >>> len(result["complex"])
        9
    """
    config = state["config"]
    started = time.perf_counter()
    try:
        loaded = load_input(
            config.input_path,
            config.input_format,
            values_path=config.values_path,
            max_dimension=config.dimension_cap,
        )
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Could not load input: {e}")],
        }

    complex_ = loaded.complex
    return {
        "complex": complex_,
        "vertex_values": loaded.vertex_values,
        "field": loaded.field,
        "function": loaded.function,
        "messages": [
            AIMessage(
                content=f"Loaded {len(complex_)} cells of dimension {complex_.dimension} "
                        f"from {config.input_path} in {time.perf_counter() - started:.2f}s"
            )
        ],
    }
