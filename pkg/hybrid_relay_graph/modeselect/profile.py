"""Fixed-order switching study: gamma as relays turn passive one by one."""

import logging
from dataclasses import dataclass

from hybrid_relay.schemas.models import BoundChoice, Scenario
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan
from hybrid_relay_graph.config import PhaseGrid
from hybrid_relay_graph.errors import ContractError
from hybrid_relay_graph.modeselect.baseline import all_active_baseline
from hybrid_relay_graph.modeselect.phase import optimize_phase


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProfileStep:
    passive: tuple[int, ...]
    gamma: float
    theta: float | None  # phase of the relay switched in this step


def profile_switch_order(
    scenario: Scenario,
    ch: ChannelSet,
    order: list[int],
    bound_kind: BoundChoice = "auto",
    grid: PhaseGrid | None = None,
) -> list[ProfileStep]:
    """
    Switch relays to passive in the given order, optimizing each new phase.

    The first step is the all-active configuration. Every switch is kept
    whether or not it helps.

    Raises:
        ContractError: if order repeats a relay or names one out of range
    """
    n = ch.num_relays
    if len(set(order)) != len(order) or any(not 0 <= r < n for r in order):
        raise ContractError(f"switch order must list distinct relays in [0, {n}), got {order}")

    kind, bound = all_active_baseline(scenario, ch, bound_kind)
    mode, refl = ModeAssignment.all_active(n), ReflectionPlan()
    steps = [ProfileStep((), bound.gamma, None)]
    for relay in order:
        mode = mode.switch_to_passive(relay)
        outcome = optimize_phase(
            relay, ch, mode, refl.with_phase(relay, 0.0, scenario.gamma_max), bound.op, scenario.eta,
            p_t=scenario.pt_mw, bound_kind=kind, grid=grid,
        )
        refl, bound = outcome.refl, outcome.bound
        steps.append(ProfileStep(mode.passive, bound.gamma, outcome.theta))
        logger.info(f"Profile: relay {relay + 1} passive, gamma={bound.gamma:.6g}")
    return steps
