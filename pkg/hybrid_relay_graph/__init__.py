"""Bounds, mode selection and the LangGraph greedy search for hybrid relay networks."""

from hybrid_relay_graph.workflow import select_modes
from hybrid_relay_graph.agent import create_selection_graph

__all__ = [
    "select_modes",
    "create_selection_graph",
]
