"""Repair stage - pushes merge points out of descending regions."""

from typing import Any

from langchain_core.messages import AIMessage

import config as settings
from errors import MorseError, describe
from morse import function_from_field
from regions import repair_to_disks


def repair_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Subdivide the complex until V-paths of each region stop merging.

    Args:
        state: Pipeline state containing complex, field and config

    Returns:
        State updates with:
            - complex, field: Pushed complex and field
            - repair_report: RepairReport
            - messages: Stage message plus warnings for residual merges
    """
    if not state["config"].repair:
        return {"messages": [AIMessage(content="Merge repair skipped")]}

    complex_ = state["complex"]
    try:
        pushed, field_, report = repair_to_disks(
            complex_, state["field"], max_steps=settings.repair_step_factor() * len(complex_)
        )
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Merge repair failed: {e}")],
        }

    messages = [AIMessage(
        content=f"Applied {report.total} pushes; complex grew to {len(pushed)} cells"
    )]
    if not report.closed:
        messages.append(AIMessage(content="⚠️  Input has boundary; disk guarantee covers closed complexes"))
    if report.exhausted:
        messages.append(AIMessage(content="⚠️  Repair step budget exhausted"))
    if report.residual:
        messages.append(AIMessage(content=f"⚠️  {len(report.residual)} merge points remain"))

    function = state.get("function")
    if report.total:
        # Pushed cells have no input values; rank the new complex instead.
        function = function_from_field(pushed, field_)
    return {
        "complex": pushed,
        "field": field_,
        "function": function,
        "repair_report": report,
        "messages": messages,
    }
