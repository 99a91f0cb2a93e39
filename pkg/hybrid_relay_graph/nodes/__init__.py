"""Node functions for the LangGraph workflow."""

from hybrid_relay_graph.nodes.initialize import initialize_node
from hybrid_relay_graph.nodes.score import score_candidates_node
from hybrid_relay_graph.nodes.switch import evaluate_switch_node
from hybrid_relay_graph.nodes.finalize import finalize_node

__all__ = [
    "initialize_node",
    "score_candidates_node",
    "evaluate_switch_node",
    "finalize_node",
]
