"""Initialize node for the mode-selection workflow."""

import logging

from langsmith import traceable

from hybrid_relay_graph.channel import ModeAssignment, ReflectionPlan
from hybrid_relay_graph.modeselect.baseline import all_active_baseline
from hybrid_relay_graph.state import SelectionState


# Set up logging
logger = logging.getLogger(__name__)


@traceable(name="initialize_node")
def initialize_node(state: SelectionState) -> dict:
    """
    Start from the all-active configuration.

    Resolves an `auto` bound choice once, on the all-active configuration,
    and records its bound as the baseline every accepted switch must beat.

    Args:
        state: Current workflow state with scenario, channels, metric, bound choice

    Returns:
        Dict with updated state fields
    """
    scenario = state["scenario"]
    channels = state["channels"]
    kind, baseline = all_active_baseline(scenario, channels, state["bound_choice"])
    logger.info(
        f"Selection start: metric={state['metric']}, bound={kind}, N={channels.num_relays}, "
        f"baseline gamma={baseline.gamma:.6g}"
    )
    return {
        "bound_kind": kind,
        "baseline_gamma": baseline.gamma,
        "mode": ModeAssignment.all_active(channels.num_relays),
        "refl": ReflectionPlan(),
        "bound": baseline,
        # Reset search state
        "candidates": [],
        "proposal": None,
        "per_iteration": [],
        "iterations": 0,
        "done": False,
        "final_result": None,
    }
