"""Candidate scoring for greedy relay mode selection."""

from dataclasses import dataclass

import numpy as np

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundKind, Metric
from hybrid_relay_graph.bounds import BoundResult, OperatingPoint, evaluate_bound
from hybrid_relay_graph.channel import (
    ChannelSet,
    ModeAssignment,
    ReflectionPlan,
    enhance_channels,
    enhance_direct,
    enhance_relay,
)
from hybrid_relay_graph.config import METRICS, PhaseGrid, default_phase_grid
from hybrid_relay_graph.errors import ContractError
from hybrid_relay_graph.modeselect.phase import (
    analytic_phase,
    forwarding_gain,
    grid_phase,
    optimize_phase,
    phase_matrix,
    reflected_paths,
)


@dataclass(frozen=True)
class CandidateEvaluation:
    """
    Score of one active relay considered for the passive mode.

    Attributes:
        candidate: relay index
        score: metric value (higher is better)
        theta: reflection phase the metric settled on
        refl: reflection plan with the candidate switched to passive at theta
        bound: post-switch bound when the metric computed one
    """
    candidate: int
    score: float
    theta: float
    refl: ReflectionPlan
    bound: BoundResult | None = None


def metric_score(
    kind: Metric,
    candidate: int,
    ch: ChannelSet,
    mode: ModeAssignment,
    refl: ReflectionPlan,
    op: OperatingPoint,
    eta: float,
    p_t: float,
    *,
    gamma_max: float,
    bound_kind: BoundKind,
    grid: PhaseGrid | None = None,
    enhance_forward_link: bool | None = None,
) -> CandidateEvaluation:
    """
    Score `candidate` (currently active) as if switched to passive.

    max-snr runs the full phase optimization with bound re-solve. The four
    heuristics avoid or shortcut the bound evaluation:
    max-dr scores p_t ||f0_hat||^2 + p_t |f0_hat^H w1|^2 at the grid phase for
    A = I + w1 w1^H with w1 held fixed; max-rr evaluates the direct-link-free
    bound on the reduced active set; max-dg scores ||f0_hat||^2 at the
    analytic phase; min-rf scores the negated harvested RF power.

    Raises:
        ContractError: for an unknown metric or a candidate that is not active
    """
    if kind not in METRICS:
        raise ContractError(f"unknown selection metric {kind!r}; expected one of {', '.join(METRICS)}")
    if candidate not in mode.active:
        raise ContractError(f"relay {candidate} is not active and cannot be scored as a switch candidate")

    grid = default_phase_grid() if grid is None else grid
    switched = mode.switch_to_passive(candidate)
    start = refl.with_phase(candidate, 0.0, gamma_max)

    if kind == "max-snr":
        outcome = optimize_phase(
            candidate, ch, switched, start, op, eta,
            p_t=p_t, bound_kind=bound_kind, grid=grid, enhance_forward_link=enhance_forward_link,
        )
        return CandidateEvaluation(candidate, outcome.gamma, outcome.theta, outcome.refl, outcome.bound)

    if kind == "min-rf":
        f_hat = enhance_relay(ch, mode, refl, candidate)
        harvested = eta * op.rho_of(candidate) * p_t * abs(np.vdot(f_hat, op.w1)) ** 2
        return CandidateEvaluation(candidate, -harvested, 0.0, start)

    base, v, magnitude = reflected_paths(ch, switched, start, candidate)

    if kind == "max-dr":
        theta = grid_phase(base, v, phase_matrix(op.w1, 0.0, eta), magnitude, grid)
        trial = start.with_phase(candidate, theta)
        f0_hat = enhance_direct(ch, switched, trial)
        score = p_t * float(np.linalg.norm(f0_hat) ** 2) + p_t * abs(np.vdot(f0_hat, op.w1)) ** 2
        return CandidateEvaluation(candidate, score, theta, trial)

    if kind == "max-dg":
        theta = analytic_phase(base, v, np.eye(base.shape[0], dtype=complex))
        trial = start.with_phase(candidate, theta)
        score = float(np.linalg.norm(enhance_direct(ch, switched, trial)) ** 2)
        return CandidateEvaluation(candidate, score, theta, trial)

    # max-rr
    a = phase_matrix(op.w1, forwarding_gain(op, switched, ch), eta)
    theta = grid_phase(base, v, a, magnitude, grid)
    trial = start.with_phase(candidate, theta)
    forward = SolverConfig.ENHANCE_FORWARD if enhance_forward_link is None else enhance_forward_link
    bound = evaluate_bound(enhance_channels(ch, switched, trial, forward), "relay", p_t, eta)
    return CandidateEvaluation(candidate, bound.gamma, theta, trial, bound)
