"""Stats stage - size profile and the JSON result."""

from typing import Any

from langchain_core.messages import AIMessage

from complexes import euler_characteristic, stats
from providers import decomposition_to_dict, field_to_dict


def stats_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Count cells and critical cells and assemble the command's result.

    Returns:
        State updates with:
            - stats: ComplexStats
            - result: JSON-ready dict for the command
            - messages: List with the stage message
    """
    complex_ = state["complex"]
    field_ = state.get("field")
    command = state["config"].command
    profile = stats(complex_, field_)

    if command == "decompose" or command == "route":
        result = decomposition_to_dict(
            complex_, field_, state["decomposition"], stats=profile, route=state.get("route"),
        )
    elif command == "simplify":
        result = {
            **field_to_dict(complex_, field_, state.get("function")),
            "cancelled": [list(pair) for pair in state.get("cancelled", [])],
            "stats": profile.to_dict(),
        }
    elif command == "validate":
        report = state["field_report"]
        result = {
            "valid": report.ok,
            "violations": report.violations,
            "cycle": report.cycle,
            "euler": euler_characteristic(complex_),
            "stats": profile.to_dict(),
        }
    else:
        result = {"stats": profile.to_dict(), "euler": euler_characteristic(complex_)}

    content = f"Complex: m={profile.m}, n={profile.n}, m_d={list(profile.m_d)}"
    if profile.c_d is not None:
        content += f", critical per dimension {list(profile.c_d)}"
    return {"stats": profile, "result": result, "messages": [AIMessage(content=content)]}
