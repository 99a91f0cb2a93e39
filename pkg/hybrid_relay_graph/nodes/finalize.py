"""Finalize node for the mode-selection workflow."""

import logging

from langsmith import traceable

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay_graph.errors import SolverError
from hybrid_relay_graph.modeselect.phase import optimize_phase
from hybrid_relay_graph.modeselect.results import SelectionResult
from hybrid_relay_graph.state import SelectionState


logger = logging.getLogger(__name__)


def polish_phases(state: SelectionState) -> tuple:
    """One cyclic pass re-optimizing every passive phase, keeping improvements."""
    scenario = state["scenario"]
    mode, refl, bound = state["mode"], state["refl"], state["bound"]
    for relay in mode.passive:
        try:
            outcome = optimize_phase(
                relay, state["channels"], mode, refl, bound.op, scenario.eta,
                p_t=scenario.pt_mw, bound_kind=state["bound_kind"],
            )
        except SolverError as e:
            logger.warning(f"Phase polish of relay {relay + 1} failed: {e}")
            continue
        if outcome.gamma > bound.gamma:
            refl, bound = outcome.refl, outcome.bound
    return refl, bound


@traceable(name="finalize_node")
def finalize_node(state: SelectionState) -> dict:
    """
    Package the final configuration as a SelectionResult.

    Args:
        state: Final workflow state

    Returns:
        Dict with final_result
    """
    refl, bound = state["refl"], state["bound"]
    if SolverConfig.PHASE_POLISH and state["mode"].passive:
        refl, bound = polish_phases(state)

    result = SelectionResult(
        mode=state["mode"],
        refl=refl,
        op=bound.op,
        gamma=bound.gamma,
        per_iteration=tuple(state.get("per_iteration", [])),
        metric=state["metric"],
        baseline_gamma=state["baseline_gamma"],
        bound_kind=state["bound_kind"],
        iterations=state.get("iterations", 0),
        bound=bound,
    )
    logger.info(
        f"Selection done: passive set {{{result.passive_label}}}, gamma={result.gamma:.6g} "
        f"(baseline {result.baseline_gamma:.6g}) after {result.iterations} rounds"
    )
    return {"final_result": result}
