"""LangGraph StateGraph definition for the greedy mode-selection workflow."""

from typing import Literal

from langgraph.graph import StateGraph, START, END

from hybrid_relay_graph.state import (
    SelectionState,
    SelectionInputState,
    SelectionOutputState,
)
from hybrid_relay_graph.nodes import (
    initialize_node,
    score_candidates_node,
    evaluate_switch_node,
    finalize_node,
)


def should_continue(state: SelectionState) -> Literal["continue", "done"]:
    """
    Determine if another greedy round should run.

    Stop (finalize) if the last round accepted no switch or no active relay
    is left to score; otherwise score the remaining active relays again.

    Args:
        state: Current workflow state

    Returns:
        "continue" for another scoring round, "done" to finalize
    """
    if state.get("done", False):
        return "done"
    mode = state.get("mode")
    if mode is None or not mode.active:
        return "done"
    return "continue"


def create_selection_graph() -> StateGraph:
    """
    Create the mode-selection StateGraph.

    The graph structure is:

    START
      │
      ▼
    initialize (all-active baseline, bound kind resolved)
      │
      ▼
    score_candidates ◄──────────┐
      │                         │
      ▼                         │
    evaluate_switch             │
      │                         │
    should_continue?            │
      ├── (continue) ───────────┘
      │
      └── (done) ──► finalize ──► END

    Returns:
        Uncompiled StateGraph
    """
    workflow = StateGraph(
        SelectionState,
        input_schema=SelectionInputState,
        output_schema=SelectionOutputState,
    )

    workflow.add_node("initialize", initialize_node)
    workflow.add_node("score_candidates", score_candidates_node)
    workflow.add_node("evaluate_switch", evaluate_switch_node)
    workflow.add_node("finalize", finalize_node)

    workflow.add_edge(START, "initialize")
    workflow.add_edge("initialize", "score_candidates")
    workflow.add_edge("score_candidates", "evaluate_switch")

    workflow.add_conditional_edges(
        "evaluate_switch",
        should_continue,
        {
            "continue": "score_candidates",
            "done": "finalize",
        },
    )

    workflow.add_edge("finalize", END)

    return workflow


def get_compiled_graph():
    """
    Get a compiled graph ready for execution, with the floor recursion limit baked in.

    Returns:
        Compiled graph with invoke/ainvoke/stream/astream methods
    """
    from hybrid_relay.config.settings import SolverConfig

    compiled = create_selection_graph().compile()
    return compiled.with_config(recursion_limit=SolverConfig.RECURSION_LIMIT)


# Pre-compile the graph for reuse
_compiled_graph = None


def get_graph():
    """
    Get the compiled graph, creating it if necessary.

    Returns:
        Compiled graph instance
    """
    global _compiled_graph
    if _compiled_graph is None:
        _compiled_graph = get_compiled_graph()
    return _compiled_graph
