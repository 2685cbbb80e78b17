"""Gradient stage - derives or validates the discrete gradient field."""

from typing import Any

from langchain_core.messages import AIMessage

from errors import FieldContractError, MalformedInputError, MorseError, describe
from morse import (
    extend_with_report,
    function_from_field,
    lower_star_values,
    validate_field,
)


def gradient_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Produce the gradient field the later stages work on.

    A field read from JSON is validated as is. Otherwise vertex values are
    extended lower star by lower star, boundary cells first.

    Args:
        state: Pipeline state containing:
            - complex: CellComplex
            - field / function: From field JSON, possibly None
            - vertex_values: Vertex data, possibly None
            - config: RunConfig

    Returns:
        State updates with:
            - field: Valid GradientField
            - function: Values used for ordering and costs
            - field_report: FieldReport of the validation
            - messages: List with the stage message
        or ``error`` when no valid field can be produced
    """
    complex_ = state["complex"]
    field_ = state.get("field")
    function = state.get("function")
    values = state.get("vertex_values")
    config = state["config"]
    messages = []

    try:
        if field_ is not None:
            report = validate_field(complex_, field_)
            if config.command == "validate":
                return {
                    "field_report": report,
                    "messages": [AIMessage(
                        content="Field is valid" if report.ok
                        else f"⚠️  Field has {len(report.violations)} violations"
                    )],
                }
            if not report.ok:
                raise FieldContractError(
                    f"Input field is invalid: {'; '.join(report.violations)}"
                )
            if function is None:
                function = function_from_field(complex_, field_)
        elif values is not None:
            field_, extension = extend_with_report(complex_, values)
            function = lower_star_values(complex_, values)
            report = validate_field(complex_, field_)
            if extension.fallbacks:
                messages.append(AIMessage(
                    content=f"⚠️  {len(extension.fallbacks)} lower stars were paired "
                            f"without the boundary-first order"
                ))
        elif config.command == "stats":
            return {"messages": [AIMessage(content="No scalar data; reporting the complex only")]}
        else:
            raise MalformedInputError(
                "No vertex values or field given; use --values or an input with embedded data",
                path=config.input_path,
            )
    except MorseError as e:
        return {
            "error": describe(e),
            "messages": [AIMessage(content=f"⚠️  Gradient stage failed: {e}")],
        }

    messages.insert(0, AIMessage(
        content=f"Gradient field has {len(field_.pairs)} pairs and "
                f"{len(field_.critical)} critical cells"
    ))
    return {
        "field": field_,
        "function": function,
        "field_report": report,
        "messages": messages,
    }
