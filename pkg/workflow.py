"""LangGraph workflow orchestration for the decomposition pipeline."""

import operator
from typing import Annotated, Any, Optional

from langchain_core.messages import AnyMessage, HumanMessage
from langgraph.graph import END, StateGraph
from typing_extensions import TypedDict

from config import RunConfig
from stages import (
    ascending_node,
    gradient_node,
    loader_node,
    regions_node,
    repair_node,
    routing_node,
    simplify_node,
    stats_node,
)

NODES = {
    "load": loader_node,
    "gradient": gradient_node,
    "simplify": simplify_node,
    "repair": repair_node,
    "regions": regions_node,
    "ascending": ascending_node,
    "route": routing_node,
    "stats": stats_node,
}

PLANS = {
    "decompose": ("load", "gradient", "simplify", "repair", "regions", "ascending", "stats"),
    "simplify": ("load", "gradient", "simplify", "stats"),
    "route": ("load", "gradient", "simplify", "repair", "regions", "ascending", "route", "stats"),
    "stats": ("load", "gradient", "stats"),
    "validate": ("load", "gradient", "stats"),
}


class PipelineState(TypedDict, total=False):
    """
    State schema for the pipeline.

    Attributes:
        messages: Accumulated stage messages
        config: RunConfig of this invocation
        complex: Current CellComplex (replaced by merge repair)
        vertex_values: Vertex data read from the input
        field: Current GradientField
        function: Per-cell values for ordering and costs
        field_report: FieldReport of the gradient stage
        cancelled: Cancelled (σ, τ) pairs
        repair_report: RepairReport of merge repair
        descending: Descending and boundary-critical regions
        decomposition: Decomposition with labels
        route: Route answering the routing query
        stats: ComplexStats
        result: JSON-ready result of the command
        error: Structured error payload; stops the pipeline
    """
    messages: Annotated[list[AnyMessage], operator.add]
    config: RunConfig
    complex: Any
    vertex_values: Optional[dict]
    field: Any
    function: Any
    field_report: Any
    cancelled: list
    repair_report: Any
    descending: list
    decomposition: Any
    route: Any
    stats: Any
    result: dict
    error: Optional[dict]


def _next_or_end(following: str):
    """Conditional edge: stop on the first stage that reported an error."""
    def route(state: PipelineState) -> str:
        return END if state.get("error") else following
    return route


def build_workflow(command: str):
    """
    Construct the LangGraph pipeline for one command.

    Workflow structure (decompose):
        Entry → load → gradient → simplify → repair → regions → ascending → stats → END
        Every stage short-circuits to END when it sets ``error``.

    Args:
        command: Key of PLANS

    Returns:
        Compiled StateGraph ready for execution

    Raises:
        ValueError: If the command is unknown

    Example:
        >>> graph = build_workflow("stats")
        >>> graph.invoke({"config": config, "messages": []})["result"]["stats"]["m"]
        9
    """
    if command not in PLANS:
        raise ValueError(f"Unknown command: {command}. Supported: {', '.join(PLANS)}")
    plan = PLANS[command]

    workflow = StateGraph(PipelineState)
    for name in plan:
        workflow.add_node(name, NODES[name])
    workflow.set_entry_point(plan[0])

    for current, following in zip(plan, plan[1:]):
        workflow.add_conditional_edges(
            current,
            _next_or_end(following),
            {following: following, END: END},
        )
    workflow.add_edge(plan[-1], END)

    return workflow.compile()


def run_pipeline(config: RunConfig) -> dict[str, Any]:
    """
    Execute the pipeline for a run configuration.

    Args:
        config: Validated RunConfig

    Returns:
        Final state dict containing:
            - result: JSON-ready result (absent when a stage failed)
            - error: Structured error payload, or None
            - messages: Stage messages in order

    Example:
        >>> state = run_pipeline(RunConfig("decompose", "torus.off", "off", "torus.csv"))
        >>> len(state["result"]["critical"])
        4
    """
    graph = build_workflow(config.command)
    initial_state: PipelineState = {
        "messages": [HumanMessage(content=f"{config.command} {config.input_path}")],
        "config": config,
        "error": None,
    }
    return graph.invoke(initial_state)
