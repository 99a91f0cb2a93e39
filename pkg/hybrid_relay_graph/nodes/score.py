"""Candidate scoring node: rank every active relay as a passive candidate."""

import logging

from langsmith import traceable

from hybrid_relay_graph.errors import SolverError
from hybrid_relay_graph.modeselect.metrics import CandidateEvaluation, metric_score
from hybrid_relay_graph.modeselect.phase import optimize_phase
from hybrid_relay_graph.state import SelectionState


logger = logging.getLogger(__name__)


def pick_best(evaluations: list[CandidateEvaluation]) -> CandidateEvaluation:
    """Highest score; the lowest relay index wins ties."""
    best = evaluations[0]
    for evaluation in evaluations[1:]:
        if evaluation.score > best.score:
            best = evaluation
    return best


def evaluate_proposal(state: SelectionState, chosen: CandidateEvaluation) -> CandidateEvaluation:
    """
    Post-switch evaluation of the chosen candidate under the selection bound.

    max-snr already ran the phase optimization while scoring; the heuristic
    metrics get it here, for the chosen candidate only.
    """
    if state["metric"] == "max-snr":
        return chosen

    scenario = state["scenario"]
    c = chosen.candidate
    outcome = optimize_phase(
        c,
        state["channels"],
        state["mode"].switch_to_passive(c),
        state["refl"].with_phase(c, 0.0, scenario.gamma_max),
        state["bound"].op,
        scenario.eta,
        p_t=scenario.pt_mw,
        bound_kind=state["bound_kind"],
    )
    return CandidateEvaluation(c, outcome.gamma, outcome.theta, outcome.refl, outcome.bound)


@traceable(name="score_candidates_node")
def score_candidates_node(state: SelectionState) -> dict:
    """
    Score every active relay with the selection metric and evaluate the winner.

    Candidates whose evaluation fails in the solver are skipped.

    Args:
        state: Current workflow state

    Returns:
        Dict with the round's candidate scores and the switch proposal
    """
    scenario = state["scenario"]
    mode = state["mode"]
    evaluations = []
    for candidate in mode.active:
        try:
            evaluation = metric_score(
                state["metric"],
                candidate,
                state["channels"],
                mode,
                state["refl"],
                state["bound"].op,
                scenario.eta,
                scenario.pt_mw,
                gamma_max=scenario.gamma_max,
                bound_kind=state["bound_kind"],
            )
        except SolverError as e:
            logger.warning(f"Skipping candidate relay {candidate + 1}: {e}")
            continue
        logger.debug(f"Candidate relay {candidate + 1}: {state['metric']} score={evaluation.score:.10g}")
        evaluations.append(evaluation)

    if not evaluations:
        return {"candidates": [], "proposal": None, "iterations": 1}

    chosen = pick_best(evaluations)
    try:
        proposal = evaluate_proposal(state, chosen)
    except SolverError as e:
        logger.warning(f"Post-switch evaluation of relay {chosen.candidate + 1} failed: {e}")
        proposal = None
    return {"candidates": evaluations, "proposal": proposal, "iterations": 1}
