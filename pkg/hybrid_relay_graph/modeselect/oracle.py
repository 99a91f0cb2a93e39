"""Exhaustive mode-selection oracle."""

import itertools
import logging

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundChoice, BoundKind, Scenario
from hybrid_relay_graph.bounds import BoundResult
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan
from hybrid_relay_graph.config import PhaseGrid, default_phase_grid
from hybrid_relay_graph.errors import ContractError, SolverError
from hybrid_relay_graph.modeselect.baseline import all_active_baseline, evaluate_configuration
from hybrid_relay_graph.modeselect.phase import (
    analytic_phase,
    forwarding_gain,
    optimize_phase,
    phase_matrix,
    reflected_paths,
)
from hybrid_relay_graph.modeselect.results import SelectionResult, passive_label


logger = logging.getLogger(__name__)


ORACLE_METRIC = "brute-force"


def cyclic_phase_search(
    scenario: Scenario,
    ch: ChannelSet,
    mode: ModeAssignment,
    refl: ReflectionPlan,
    kind: BoundKind,
    grid: PhaseGrid | None = None,
    epsilon: float | None = None,
    max_rounds: int | None = None,
    bound: BoundResult | None = None,
) -> tuple[ReflectionPlan, BoundResult]:
    """
    Coordinate search over the passive phases.

    Each passive relay in turn tries its analytic phase and then the
    alternating grid search with bound re-solve, keeping whichever improves
    the bound. Stops once a full cycle improves by at most epsilon. With a
    grid, analytic phases snap to it and the grid search runs on it.

    Args:
        bound: Bound already evaluated at refl, if known
    """
    epsilon = SolverConfig.GREEDY_EPSILON if epsilon is None else epsilon
    max_rounds = SolverConfig.PHASE_MAX_ROUNDS if max_rounds is None else max_rounds
    search_grid = default_phase_grid() if grid is None else grid

    if bound is None:
        bound = evaluate_configuration(scenario, ch, mode, refl, kind)
    for _ in range(max_rounds):
        start = bound.gamma
        for candidate in mode.passive:
            base, v, _ = reflected_paths(ch, mode, refl, candidate)
            a = phase_matrix(bound.op.w1, forwarding_gain(bound.op, mode, ch), scenario.eta)
            theta = analytic_phase(base, v, a)
            if grid is not None:
                theta = grid.nearest(theta)
            trial = refl.with_phase(candidate, theta)
            trial_bound = evaluate_configuration(scenario, ch, mode, trial, kind)
            if trial_bound.gamma > bound.gamma:
                refl, bound = trial, trial_bound

            outcome = optimize_phase(
                candidate, ch, mode, refl, bound.op, scenario.eta,
                p_t=scenario.pt_mw, bound_kind=kind, grid=search_grid,
            )
            if outcome.gamma > bound.gamma:
                refl, bound = outcome.refl, outcome.bound
        if bound.gamma - start <= epsilon:
            break
    return refl, bound


def _seed_from_parents(
    scenario: Scenario,
    ch: ChannelSet,
    mode: ModeAssignment,
    kind: BoundKind,
    solved: dict[tuple[int, ...], tuple[ReflectionPlan, BoundResult]],
    grid: PhaseGrid,
) -> tuple[ReflectionPlan, BoundResult]:
    """
    Best starting point for mode: phases 0 everywhere, or a solved parent
    assignment (one passive relay fewer) with that relay switched in by
    the grid phase search from the parent's operating point.
    """
    start = ReflectionPlan.uniform(mode.passive, scenario.gamma_max)
    best = (start, evaluate_configuration(scenario, ch, mode, start, kind))
    for relay in mode.passive:
        parent = list(mode.b)
        parent[relay] = 0
        if tuple(parent) not in solved:
            continue
        parent_refl, parent_bound = solved[tuple(parent)]
        try:
            outcome = optimize_phase(
                relay, ch, mode, parent_refl.with_phase(relay, 0.0, scenario.gamma_max), parent_bound.op,
                scenario.eta, p_t=scenario.pt_mw, bound_kind=kind, grid=grid,
            )
        except SolverError as e:
            logger.debug(f"Oracle seed from relay {relay} failed: {e}")
            continue
        if outcome.gamma > best[1].gamma:
            best = (outcome.refl, outcome.bound)
    return best


def brute_force_select(
    scenario: Scenario,
    ch: ChannelSet,
    bound_kind: BoundChoice = "auto",
    phase_resolution: int | None = None,
) -> SelectionResult:
    """
    Evaluate every mode assignment and keep the best.

    Assignments are solved in order of their passive-set size, each
    starting from the best of phases 0 and its solved parents extended by
    one switch, then refined by the cyclic phase search. The winner is
    picked in lexicographic order starting from all-active, and a later
    assignment wins only with a strictly larger gamma.

    Args:
        scenario: Network parameters
        ch: Channel realization
        bound_kind: Bound to maximize, or "auto"
        phase_resolution: Grid size M for the phases; None keeps them continuous

    Raises:
        ContractError: if the network has more relays than the oracle enumerates
    """
    n = ch.num_relays
    if n > SolverConfig.ORACLE_MAX_RELAYS:
        raise ContractError(
            f"brute-force selection enumerates 2^N assignments and is limited to "
            f"N <= {SolverConfig.ORACLE_MAX_RELAYS}, got N = {n}"
        )
    grid = PhaseGrid(phase_resolution) if phase_resolution is not None else None
    seed_grid = default_phase_grid() if grid is None else grid

    kind, baseline = all_active_baseline(scenario, ch, bound_kind)
    solved: dict[tuple[int, ...], tuple[ReflectionPlan, BoundResult]] = {(0,) * n: (ReflectionPlan(), baseline)}
    assignments = [flags for flags in itertools.product((0, 1), repeat=n) if any(flags)]
    for flags in sorted(assignments, key=sum):
        mode = ModeAssignment(flags)
        try:
            start, start_bound = _seed_from_parents(scenario, ch, mode, kind, solved, seed_grid)
            solved[flags] = cyclic_phase_search(scenario, ch, mode, start, kind, grid, bound=start_bound)
        except SolverError as e:
            logger.warning(f"Oracle skipped passive set {{{passive_label(mode.passive)}}}: {e}")

    best_flags = (0,) * n
    for flags in itertools.product((0, 1), repeat=n):
        if flags in solved and solved[flags][1].gamma > solved[best_flags][1].gamma:
            best_flags = flags
    best_mode = ModeAssignment(best_flags)
    best_refl, best = solved[best_flags]

    logger.info(
        f"Oracle over {len(solved)} assignments: passive set {{{passive_label(best_mode.passive)}}}, "
        f"gamma={best.gamma:.6g}"
    )
    return SelectionResult(
        mode=best_mode,
        refl=best_refl,
        op=best.op,
        gamma=best.gamma,
        per_iteration=(),
        metric=ORACLE_METRIC,
        baseline_gamma=baseline.gamma,
        bound_kind=kind,
        iterations=len(solved),
        bound=best,
    )
