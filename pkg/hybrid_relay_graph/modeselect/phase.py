"""Reflection-phase optimization of a passive relay."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundKind
from hybrid_relay_graph.bounds import BoundResult, OperatingPoint, evaluate_bound
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan, enhance_channels
from hybrid_relay_graph.config import PhaseGrid, default_phase_grid
from hybrid_relay_graph.errors import ContractError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseOutcome:
    """Best reflection phase found for one passive relay."""
    candidate: int
    theta: float
    gamma: float
    refl: ReflectionPlan
    bound: BoundResult
    rounds: int


def forwarding_gain(op: OperatingPoint, mode: ModeAssignment, ch: ChannelSet) -> float:
    """
    g_t = sum rho_n / (1 - rho_n) |g_n|^2 over relays active in both op and mode.

    Relays the operating point leaves silent (zero transmit power) are skipped.
    """
    total = 0.0
    still_active = set(mode.active)
    for i, n in enumerate(op.active):
        if n in still_active and op.p[i] > 0:
            rho = float(op.rho[i])
            total += rho / (1.0 - rho) * abs(ch.g[n]) ** 2
    return total


def phase_matrix(w1: np.ndarray, g_t: float, eta: float, identity_weight: float = 1.0) -> np.ndarray:
    """A = (identity_weight + eta g_t) I + w1 w1^H."""
    k = w1.shape[0]
    return (identity_weight + eta * g_t) * np.eye(k, dtype=complex) + np.outer(w1, w1.conj())


def reflected_paths(ch: ChannelSet, mode: ModeAssignment, refl: ReflectionPlan, candidate: int) -> tuple[np.ndarray, np.ndarray, float]:
    """
    Split f0_hat into the part fixed while `candidate` is tuned and its own path.

    Returns:
        (base, v, magnitude) with f0_hat(theta) = base + magnitude e^{j theta} v
    """
    if candidate not in mode.passive:
        raise ContractError(f"relay {candidate} is not passive; only passive relays carry a phase")
    if candidate not in refl.entries:
        raise ContractError(f"passive relay {candidate} has no reflection entry")
    base = ch.f0.astype(complex)
    for n in mode.passive:
        if n != candidate:
            base = base + refl.coefficient(n) * ch.g[n] * ch.F[n]
    return base, ch.g[candidate] * ch.F[candidate], refl.entries[candidate].magnitude


def phase_objective(theta, base: np.ndarray, v: np.ndarray, a: np.ndarray, magnitude: float) -> np.ndarray:
    """f0_hat(theta)^H A f0_hat(theta), vectorized over theta."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    c0 = float(np.real(np.vdot(base, a @ base))) + magnitude ** 2 * float(np.real(np.vdot(v, a @ v)))
    c1 = magnitude * np.vdot(base, a @ v)
    return c0 + 2.0 * np.real(np.exp(1j * theta) * c1)


def analytic_phase(base: np.ndarray, v: np.ndarray, a: np.ndarray) -> float:
    """Maximizer -arg(base^H A v) of the phase objective; 0 when it is flat."""
    c1 = np.vdot(base, a @ v)
    if abs(c1) == 0.0:
        return 0.0
    return float(-np.angle(c1)) % (2.0 * math.pi)


def grid_phase(base: np.ndarray, v: np.ndarray, a: np.ndarray, magnitude: float, grid: PhaseGrid) -> float:
    """Grid maximizer of the phase objective, lowest grid point on ties."""
    values = phase_objective(grid.points, base, v, a, magnitude)
    return float(grid.points[int(np.argmax(values))])


def optimize_phase(
    candidate: int,
    ch: ChannelSet,
    mode: ModeAssignment,
    refl: ReflectionPlan,
    op: OperatingPoint,
    eta: float,
    *,
    p_t: float,
    bound_kind: BoundKind,
    grid: PhaseGrid | None = None,
    epsilon: float | None = None,
    max_rounds: int | None = None,
    enhance_forward_link: bool | None = None,
) -> PhaseOutcome:
    """
    Alternate a grid phase step with a bound re-solve for one passive relay.

    The phase step maximizes f0_hat(theta)^H A f0_hat(theta) with
    A = (1 + eta g_t) I + w1 w1^H from the latest operating point; the bound
    step re-evaluates `bound_kind` on the re-enhanced channels. Stops once
    the bound improves by at most epsilon; the best round is returned.

    Raises:
        ContractError: if candidate is not passive in mode
        SolverError: if a bound re-solve fails
    """
    grid = default_phase_grid() if grid is None else grid
    epsilon = SolverConfig.GREEDY_EPSILON if epsilon is None else epsilon
    max_rounds = SolverConfig.PHASE_MAX_ROUNDS if max_rounds is None else max_rounds
    forward = SolverConfig.ENHANCE_FORWARD if enhance_forward_link is None else enhance_forward_link

    base, v, magnitude = reflected_paths(ch, mode, refl, candidate)
    best: PhaseOutcome | None = None
    previous = -math.inf
    current_op = op
    for round_ in range(1, max_rounds + 1):
        a = phase_matrix(current_op.w1, forwarding_gain(current_op, mode, ch), eta)
        theta = grid_phase(base, v, a, magnitude, grid)
        trial = refl.with_phase(candidate, theta)
        bound = evaluate_bound(enhance_channels(ch, mode, trial, forward), bound_kind, p_t, eta)
        logger.debug(f"Phase round {round_} for relay {candidate}: theta={theta:.6f}, gamma={bound.gamma:.10g}")
        if best is None or bound.gamma > best.gamma:
            best = PhaseOutcome(candidate, theta, bound.gamma, trial, bound, round_)
        if bound.gamma - previous <= epsilon:
            break
        previous = bound.gamma
        current_op = bound.op
    return best
