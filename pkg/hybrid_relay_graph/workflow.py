"""Workflow entry point for greedy relay mode selection."""

import logging

from langsmith import traceable

from hybrid_relay.schemas.models import BoundChoice, Metric, Scenario
from hybrid_relay_graph.agent import get_graph
from hybrid_relay_graph.channel import ChannelSet
from hybrid_relay_graph.config import METRICS, recursion_limit
from hybrid_relay_graph.errors import ContractError
from hybrid_relay_graph.modeselect.results import SelectionResult
from hybrid_relay_graph.state import create_initial_state


logger = logging.getLogger(__name__)


@traceable(name="select_modes")
def select_modes(
    scenario: Scenario,
    ch: ChannelSet,
    metric: Metric = "max-snr",
    bound_kind: BoundChoice = "auto",
) -> SelectionResult:
    """
    Greedily switch relays to passive mode while gamma improves.

    Starts all-active; every round scores each active relay as a passive
    candidate with `metric`, and switches the best one iff its post-switch
    gamma beats the current gamma by more than the greedy epsilon.

    Args:
        scenario: Network parameters
        ch: Channel realization of the scenario
        metric: Candidate-scoring metric
        bound_kind: "direct", "relay" or "auto" (resolved on the all-active configuration)

    Returns:
        SelectionResult with the accepted switches in order

    Raises:
        ContractError: for an unknown metric or bound choice
        SolverError: if the all-active baseline cannot be evaluated
    """
    if metric not in METRICS:
        raise ContractError(f"unknown selection metric {metric!r}; expected one of {', '.join(METRICS)}")
    if bound_kind not in ("direct", "relay", "auto"):
        raise ContractError(f"unknown bound choice {bound_kind!r}")
    if ch.num_relays != scenario.n or ch.num_antennas != scenario.k:
        raise ContractError(
            f"channels ({ch.num_relays} relays, {ch.num_antennas} antennas) do not match the scenario "
            f"({scenario.n} relays, {scenario.k} antennas)"
        )

    initial_state = create_initial_state(scenario, ch, metric, bound_kind)
    result = get_graph().invoke(
        initial_state,
        config={"recursion_limit": recursion_limit(scenario.n)},
    )
    return result["final_result"]
