"""Switch node: accept the proposed mode switch only if it improves gamma."""

import logging

from langsmith import traceable

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay_graph.state import SelectionState


logger = logging.getLogger(__name__)


@traceable(name="evaluate_switch_node")
def evaluate_switch_node(state: SelectionState) -> dict:
    """
    Apply the proposal when it beats the current gamma by more than epsilon.

    Args:
        state: Current workflow state with the round's proposal

    Returns:
        Dict with the new configuration, or done=True when no switch helps
    """
    proposal = state.get("proposal")
    current = state["bound"].gamma
    if proposal is None or proposal.bound is None:
        logger.info("No candidate left to switch; stopping")
        return {"done": True}

    gain = proposal.bound.gamma - current
    if gain <= SolverConfig.GREEDY_EPSILON:
        logger.info(
            f"Best candidate relay {proposal.candidate + 1} gains {gain:.3g} "
            f"(<= {SolverConfig.GREEDY_EPSILON:g}); stopping"
        )
        return {"done": True}

    mode = state["mode"].switch_to_passive(proposal.candidate)
    logger.info(
        f"Relay {proposal.candidate + 1} switched to passive: gamma {current:.6g} -> {proposal.bound.gamma:.6g}"
    )
    return {
        "mode": mode,
        "refl": proposal.refl,
        "bound": proposal.bound,
        "per_iteration": [(proposal.candidate, proposal.bound.gamma)],
        "done": not mode.active,
    }
