"""Region stages - descending, boundary and ascending regions."""

import time
from typing import Any

from langchain_core.messages import AIMessage

from errors import MorseError, describe
from regions import (
    ascending_regions,
    boundary_regions,
    descending_regions,
    label_cells,
    membership,
)


def regions_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Build descending regions, plus boundary-critical ones when requested.

    Args:
        state: Pipeline state containing complex, field and config

    Returns:
        State updates with:
            - descending: list of Region
            - messages: List with the stage message
    """
    complex_ = state["complex"]
    field_ = state["field"]
    config = state["config"]
    started = time.perf_counter()
    try:
        down = descending_regions(complex_, field_, threads=config.threads)
        extra = []
        if config.boundary:
            extra = boundary_regions(
                complex_, field_, interior_regions=down, threads=config.threads
            )
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Region construction failed: {e}")],
        }

    visits = sum(r.visits for r in down + extra)
    content = f"Built {len(down)} descending regions ({visits} pair visits)"
    if config.boundary:
        content += f" and {len(extra)} boundary-critical regions"
    return {
        "descending": down + extra,
        "messages": [AIMessage(content=f"{content} in {time.perf_counter() - started:.2f}s")],
    }


def ascending_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Build ascending regions on the dual and label every cell.

    Ascending regions are built when requested or when a route needs them.

    Returns:
        State updates with:
            - decomposition: Decomposition
            - messages: Stage message, with warnings for uncovered or shared cells
    """
    complex_ = state["complex"]
    field_ = state["field"]
    config = state["config"]
    try:
        up = []
        if config.ascending or config.command == "route":
            up = ascending_regions(complex_, field_, threads=config.threads)
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Ascending regions failed: {e}")],
        }

    decomp = label_cells(complex_, state["descending"], up)
    messages = [AIMessage(content=f"Decomposition has {len(up)} ascending regions")]
    uncovered = decomp.uncovered(complex_, field_)
    if uncovered:
        messages.append(AIMessage(
            content=f"⚠️  {len(uncovered)} regular cells lie in no descending region"
        ))
    interior = [r for r in state["descending"] if not r.via_boundary]
    shared = [c for c, owners in membership(interior).items() if len(owners) > 1]
    if shared:
        messages.append(AIMessage(
            content=f"⚠️  {len(shared)} cells lie in more than one interior descending region"
        ))
    return {"decomposition": decomp, "messages": messages}
