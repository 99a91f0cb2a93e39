"""All-active reference configuration and bound-kind resolution."""

import logging

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundChoice, BoundKind, Scenario
from hybrid_relay_graph.bounds import BoundResult, evaluate_bound
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan, enhance_channels
from hybrid_relay_graph.config import resolve_bound_kind


logger = logging.getLogger(__name__)


def evaluate_configuration(
    scenario: Scenario,
    ch: ChannelSet,
    mode: ModeAssignment,
    refl: ReflectionPlan,
    kind: BoundKind,
) -> BoundResult:
    """Bound of one (mode, reflection plan) configuration."""
    enh = enhance_channels(ch, mode, refl, SolverConfig.ENHANCE_FORWARD)
    return evaluate_bound(enh, kind, scenario.pt_mw, scenario.eta)


def all_active_baseline(scenario: Scenario, ch: ChannelSet, choice: BoundChoice) -> tuple[BoundKind, BoundResult]:
    """
    Evaluate the all-active configuration, resolving `auto` once.

    Returns:
        (resolved bound kind, bound of the all-active configuration)
    """
    mode = ModeAssignment.all_active(ch.num_relays)
    refl = ReflectionPlan()
    if choice != "auto":
        return choice, evaluate_configuration(scenario, ch, mode, refl, choice)

    direct = evaluate_configuration(scenario, ch, mode, refl, "direct")
    relay = evaluate_configuration(scenario, ch, mode, refl, "relay")
    kind = resolve_bound_kind(choice, direct.gamma, relay.gamma)
    logger.info(f"Bound auto-resolved to {kind} (direct={direct.gamma:.6g}, relay={relay.gamma:.6g})")
    return kind, direct if kind == "direct" else relay
