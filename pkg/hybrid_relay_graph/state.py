"""State schema definition for the greedy mode-selection workflow."""

from operator import add
from typing import Annotated, TypedDict

from hybrid_relay.schemas.models import BoundChoice, BoundKind, Metric, Scenario
from hybrid_relay_graph.bounds import BoundResult
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan
from hybrid_relay_graph.modeselect.metrics import CandidateEvaluation
from hybrid_relay_graph.modeselect.results import SelectionResult


class SelectionInputState(TypedDict):
    """Input schema: one channel realization and what to optimize."""
    scenario: Scenario
    channels: ChannelSet
    metric: Metric
    bound_choice: BoundChoice


class SelectionOutputState(TypedDict):
    """Output schema - only the final result."""
    final_result: SelectionResult | None


class SelectionState(TypedDict):
    """
    State schema for the mode-selection workflow.

    This state flows through all nodes in the graph:
    initialize -> score_candidates -> evaluate_switch -> (loop or finalize)
    """
    # ===== Input (set once at start) =====
    scenario: Scenario
    channels: ChannelSet
    metric: Metric
    bound_choice: BoundChoice

    # ===== Resolved once on the all-active configuration =====
    bound_kind: BoundKind | None
    baseline_gamma: float

    # ===== Current configuration =====
    mode: ModeAssignment | None
    refl: ReflectionPlan | None
    bound: BoundResult | None

    # ===== Search State =====
    candidates: list[CandidateEvaluation]        # scores of the latest round (overwrites)
    proposal: CandidateEvaluation | None         # post-switch evaluation of the best candidate
    per_iteration: Annotated[list[tuple[int, float]], add]  # accepted switches (accumulates)
    iterations: Annotated[int, add]              # scoring rounds executed (accumulates)
    done: bool

    # ===== Final Output =====
    final_result: SelectionResult | None


def create_initial_state(
    scenario: Scenario,
    channels: ChannelSet,
    metric: Metric,
    bound_choice: BoundChoice,
) -> SelectionState:
    """Create initial state for a mode-selection run."""
    return SelectionState(
        # Input
        scenario=scenario,
        channels=channels,
        metric=metric,
        bound_choice=bound_choice,
        # Populated by initialize node
        bound_kind=None,
        baseline_gamma=0.0,
        mode=None,
        refl=None,
        bound=None,
        # Search state
        candidates=[],
        proposal=None,
        per_iteration=[],
        iterations=0,
        done=False,
        # Final output
        final_result=None,
    )
