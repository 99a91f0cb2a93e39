"""SNR lower bounds for a fixed relay mode assignment.

Two bounds are evaluated on the enhanced channels:

- direct: convex reformulation keeping the direct link, solved as an SDP over
  the HAP beamformer W1 and the power-split matrix Wbar.
- relay: the direct-link-free bound, solved by alternating between network
  beamforming of the relays and power-split updates, with the HAP beam fixed
  by max-min beamforming. The single-antenna variant uses each relay's own
  channel gain instead of the min-gain.
"""

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundKind
from hybrid_relay_graph.channel import EnhancedChannels
from hybrid_relay_graph.conic import (
    RANK_ONE_RATIO,
    AffineForm,
    LinearConstraint,
    LmiConstraint,
    SdpProblem,
    extract_beamformer,
    solve_min_gain_beamforming,
    solve_sdp,
)
from hybrid_relay_graph.errors import ContractError, DomainError, SolverError


logger = logging.getLogger(__name__)


# Relays whose harvest-to-forward constant falls below this are silent
PSI_TOL = 1e-12
GAP_TOL = 1e-12


def matched_filter(v: np.ndarray) -> np.ndarray:
    """v / ||v||, or the first unit vector when v = 0."""
    norm = np.linalg.norm(v)
    if norm > 0:
        return v / norm
    unit = np.zeros(v.shape[0], dtype=complex)
    unit[0] = 1.0
    return unit


@dataclass(frozen=True)
class OperatingPoint:
    """
    Beamformers and per-active-relay settings; entry i belongs to relay active[i].

    Attributes:
        w1: HAP beamformer in the first hop
        w2: HAP beamformer in the second hop
        rho: power-splitting ratios
        p: relay transmit powers (mW)
        x: amplification coefficients
        y: received-amplitude magnitudes
        x_hat: x * |g_hat|
    """
    w1: np.ndarray
    w2: np.ndarray
    rho: np.ndarray
    p: np.ndarray
    x: np.ndarray
    y: np.ndarray
    x_hat: np.ndarray
    active: tuple[int, ...]

    def rho_of(self, relay: int) -> float:
        return float(self.rho[self.active.index(relay)])

    def power_budget_slack(self, enh: EnhancedChannels, p_t: float, eta: float) -> np.ndarray:
        """eta rho p_t |f_hat^H w1|^2 - p per relay; nonnegative when feasible."""
        harvested = eta * self.rho * p_t * np.abs(enh.f_hat.conj() @ self.w1) ** 2
        return harvested - self.p


@dataclass(frozen=True)
class BoundResult:
    """
    Outcome of one bound evaluation.

    gamma = gamma1 + gamma2. For the direct-link-free kinds gamma1 is 0 and
    gamma1_reference carries p_t |f0_hat^H w1|^2 for inspection.
    """
    gamma1: float
    gamma2: float
    gamma: float
    kind: BoundKind
    op: OperatingPoint
    iterations: int
    converged: bool
    trace: tuple[float, ...] = ()
    relaxation_value: float = math.nan
    gamma1_reference: float = math.nan
    diagnostics: tuple[str, ...] = ()

    @property
    def active(self) -> tuple[int, ...]:
        return self.op.active


def x_bar(rho, s2, g2, p_t: float, eta: float):
    """Amplification bound eta rho p_t s^2 g^2 / (1 + (1 - rho) p_t s^2)."""
    c = p_t * s2
    return eta * rho * c * g2 / (1.0 + (1.0 - rho) * c)


def y_bar(rho, s2, p_t: float):
    """Received-amplitude bound (1 - rho) p_t s^2."""
    return (1.0 - rho) * p_t * s2


@dataclass(frozen=True)
class PowerSplitState:
    """Power-split iterate with the per-relay bounds it induces."""
    rho: np.ndarray
    s2: np.ndarray
    x_bar: np.ndarray
    y_bar: np.ndarray
    beta: float

    @classmethod
    def build(cls, rho, s2, g_hat, p_t: float, eta: float, beta: float) -> "PowerSplitState":
        rho = np.asarray(rho, dtype=float)
        s2 = np.broadcast_to(np.asarray(s2, dtype=float), rho.shape).copy()
        g2 = np.abs(np.asarray(g_hat)) ** 2
        return cls(
            rho=rho,
            s2=s2,
            x_bar=x_bar(rho, s2, g2, p_t, eta),
            y_bar=y_bar(rho, s2, p_t),
            beta=beta,
        )


def relay_terms(rho, g_hat, f0_hat: np.ndarray, p_t: float, eta: float) -> np.ndarray:
    """Per-relay summands eta rho p_t / (1 - rho) |g_hat|^2 ||f0_hat||^2 - 1."""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho >= 1.0):
        raise DomainError(f"power-splitting ratios must be < 1, got {rho.max():.12g}")
    if np.any(rho < 0.0):
        raise DomainError(f"power-splitting ratios must be >= 0, got {rho.min():.12g}")
    g2 = np.abs(np.atleast_1d(np.asarray(g_hat))) ** 2
    f0n2 = float(np.linalg.norm(f0_hat) ** 2)
    return eta * rho * p_t / (1.0 - rho) * g2 * f0n2 - 1.0


def closed_form_snr(rho, w1: np.ndarray, f0_hat: np.ndarray, g_hat, p_t: float, eta: float) -> float:
    """Direct bound value at a given power split and HAP beam."""
    direct = p_t * float(np.linalg.norm(f0_hat) ** 2) + p_t * abs(np.vdot(f0_hat, w1)) ** 2
    return float(direct + np.sum(relay_terms(rho, g_hat, f0_hat, p_t, eta)))


def _information_power(a: np.ndarray, psi: np.ndarray, p_t: float) -> np.ndarray:
    """Largest s with p_t s^2 + (1 + psi) s <= psi a, elementwise."""
    disc = np.sqrt((1.0 + psi) ** 2 + 4.0 * p_t * psi * np.maximum(a, 0.0))
    return 2.0 * psi * np.maximum(a, 0.0) / ((1.0 + psi) + disc)


def _tight_rho(s, psi, p_t: float):
    """rho at which the relay summand psi rho / (1 - rho) - 1 equals p_t s."""
    return (1.0 + p_t * s) / (psi + 1.0 + p_t * s)


def _channel_scale(enh: EnhancedChannels, live: list[int]) -> float:
    norms = [float(np.linalg.norm(enh.f0_hat))] + [float(np.linalg.norm(enh.f_hat[i])) for i in live]
    scale = max(norms)
    return scale if scale > 0 else 1.0


def _build_direct_problem(
    enh: EnhancedChannels,
    live: list[int],
    psi: np.ndarray,
    p_t: float,
    scale: float = 1.0,
) -> SdpProblem:
    """
    Direct-bound SDP on channels divided by scale.

    The objective and the kappa/s scalars come out divided by p_t scale^2
    and scale^2 respectively; W1 and Wbar are unaffected.
    """
    k = enh.num_antennas
    f0 = enh.f0_hat / scale
    objective = float(np.linalg.norm(f0) ** 2) + AffineForm.quadratic("W1", f0)
    constraints = [LinearConstraint(AffineForm.trace("W1", k), "<=", 1.0)]
    lmis = []
    scalars = []
    for i in live:
        f = enh.f_hat[i] / scale
        kappa, s = f"kappa_{i}", f"s_{i}"
        scalars += [kappa, s]
        objective = objective + AffineForm.var(s)
        constraints += [
            LinearConstraint(AffineForm.var(kappa) - AffineForm.quadratic("W1", f), "<="),
            LinearConstraint(
                AffineForm.var(s) - AffineForm.quadratic("W1", f) + AffineForm.quadratic("Wbar", f), "=="
            ),
            LinearConstraint(AffineForm.var(s), ">="),
        ]
        # [[kappa psi - (1 + psi) s, sqrt(p_t) s], [sqrt(p_t) s, 1]] >= 0, rows scaled by 1/sqrt(psi)
        corner = AffineForm.var(kappa) - AffineForm.var(s, (1.0 + psi[i]) / psi[i])
        off = AffineForm.var(s, scale * math.sqrt(p_t / psi[i]))
        lmis.append(LmiConstraint(((corner, off), (off, AffineForm.const(1.0)))))

    blocks = {"W1": k, "Wbar": k} if live else {"W1": k}
    return SdpProblem(
        blocks=blocks,
        scalars=tuple(scalars),
        objective=objective,
        constraints=tuple(constraints),
        lmis=tuple(lmis),
    )


def _split_value(p_t: float, f0n2: float, gamma1: float, s: np.ndarray) -> float:
    return p_t * f0n2 + gamma1 + p_t * float(np.sum(s))


def eval_bound_direct(
    enh: EnhancedChannels,
    p_t: float,
    eta: float,
    tol: float | None = None,
) -> BoundResult:
    """
    Direct-link bound via the convex reformulation.

    Relays with no forwarding path (g_hat = 0, f0_hat = 0 or f_hat = 0)
    are silent: zero transmit power, no contribution to gamma. Every relay
    that forwards sits at the rho where its summand equals p_t s_n, so
    gamma reproduces the SDP objective whenever W1 is rank one.

    Raises:
        SolverError: when the SDP ends without an optimal status
    """
    rho_floor, rho_ceiling = SolverConfig.RHO_FLOOR, SolverConfig.RHO_CEILING
    na = enh.num_active
    f0n2 = float(np.linalg.norm(enh.f0_hat) ** 2)
    psi = eta * p_t * np.abs(enh.g_hat) ** 2 * f0n2
    live = [i for i in range(na) if psi[i] > PSI_TOL and np.linalg.norm(enh.f_hat[i]) > 0]

    scale = _channel_scale(enh, live)
    problem = _build_direct_problem(enh, live, psi, p_t, scale)
    solution = solve_sdp(problem, tol=tol)
    if not solution.is_optimal:
        raise SolverError(f"direct-bound SDP ended with status {solution.status}", solution)
    relaxation = solution.objective * p_t * scale**2

    live_f = enh.f_hat[live]
    live_psi = psi[live]

    def rank_one_value(w: np.ndarray) -> float:
        a = np.abs(live_f.conj() @ w) ** 2
        return _split_value(p_t, f0n2, p_t * abs(np.vdot(enh.f0_hat, w)) ** 2, _information_power(a, live_psi, p_t))

    w1_matrix = solution.blocks["W1"]
    w1 = extract_beamformer(w1_matrix, rank_one_value)
    eigvals = np.linalg.eigvalsh(w1_matrix)
    rank_one = eigvals.sum() > 0 and eigvals[-1] / eigvals.sum() >= RANK_ONE_RATIO
    gamma1 = p_t * abs(np.vdot(enh.f0_hat, w1)) ** 2
    gains = np.abs(enh.f_hat.conj() @ w1) ** 2 if na else np.zeros(0)
    diagnostics = []

    # Information powers at solver-noise level count as silent
    noise = SolverConfig.SDP_TOL * (1.0 + relaxation)
    s = np.zeros(na)
    if rank_one:
        s[live] = [max(solution.scalars[f"s_{i}"], 0.0) * scale**2 for i in live]
        for i in (i for i in live if p_t * s[i] > noise):
            a = float(np.real(np.vdot(enh.f_hat[i], w1_matrix @ enh.f_hat[i])))
            b = float(np.real(np.vdot(enh.f_hat[i], solution.blocks["Wbar"] @ enh.f_hat[i])))
            split = b / a if a > 0 else 1.0
            target = _tight_rho(s[i], psi[i], p_t)
            if abs(split - target) > 1e-4 * (1.0 + split) and "slack-lmi" not in diagnostics:
                diagnostics.append("slack-lmi")
                logger.debug(f"Direct bound: relay {enh.active[i]} split {split:.6g} off the tight value {target:.6g}")
    else:
        s[live] = _information_power(gains[live], live_psi, p_t)
        if _split_value(p_t, f0n2, gamma1, s) > relaxation * (1.0 + 1e-6):
            # Per-relay splits need a Wbar that may not exist; a common split always does
            ratios = [1.0 - s[i] / gains[i] for i in live if gains[i] > 0]
            common = max(ratios) if ratios else 1.0
            s[live] = (1.0 - common) * gains[live]
            diagnostics.append("common-split")

    rho = np.full(na, rho_ceiling)
    contributing = []
    for i in live:
        if p_t * s[i] <= noise:
            continue
        rho[i] = min(max(_tight_rho(s[i], psi[i], p_t), rho_floor), rho_ceiling)
        if rho[i] < rho_ceiling:
            contributing.append(i)
    silent = [enh.active[i] for i in range(na) if i not in contributing]
    if silent:
        diagnostics.append("silent-relay")
        logger.debug(f"Direct bound: relays {silent} stay silent")
    if not rank_one and eigvals.sum() > 0:
        diagnostics.append("randomized-beam")

    terms = relay_terms(rho[contributing], enh.g_hat[contributing], enh.f0_hat, p_t, eta)
    gamma2 = p_t * f0n2 + float(np.sum(terms))

    p = np.where(np.isin(np.arange(na), contributing), eta * rho * p_t * gains, 0.0)
    y = np.sqrt((1.0 - rho) * p_t * gains)
    x = np.sqrt(p / (1.0 + y ** 2))
    op = OperatingPoint(
        w1=w1,
        w2=matched_filter(enh.f0_hat),
        rho=rho,
        p=p,
        x=x,
        y=y,
        x_hat=x * np.abs(enh.g_hat),
        active=enh.active,
    )
    gamma = gamma1 + gamma2
    logger.debug(f"Direct bound: gamma={gamma:.10g}, relaxation={relaxation:.10g}, active={enh.active}")
    return BoundResult(
        gamma1=gamma1,
        gamma2=gamma2,
        gamma=gamma,
        kind="direct",
        op=op,
        iterations=solution.iterations,
        converged=True,
        trace=(gamma,),
        relaxation_value=relaxation,
        diagnostics=tuple(diagnostics),
    )


def _objective(x_hat: np.ndarray, y: np.ndarray) -> float:
    return float((x_hat @ y) ** 2 / (1.0 + x_hat @ x_hat))


def _coordinate_ascent(
    start: np.ndarray,
    y: np.ndarray,
    upper: np.ndarray,
    tol: float,
    max_sweeps: int,
) -> tuple[np.ndarray, float]:
    x = start.copy()
    current = _objective(x, y)
    for _ in range(max_sweeps):
        for n in range(x.shape[0]):
            s = x @ y - x[n] * y[n]
            q = 1.0 + x @ x - x[n] ** 2
            # (s + y_n t)^2 / (q + t^2) rises until t = y_n q / s, then falls
            x[n] = upper[n] if s <= 0 else min(upper[n], y[n] * q / s)
        new = _objective(x, y)
        if abs(new - current) <= tol * abs(new):
            return x, new
        current = new
    return x, current


def inner_beamforming(
    x_bar_: np.ndarray,
    y_bar_: np.ndarray,
    warm_start: np.ndarray | None = None,
    tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray, float]:
    """
    Network beamforming of the active relays for fixed bounds.

    Sets y = sqrt(y_bar) and maximizes |x_hat^T y|^2 / (1 + ||x_hat||^2)
    over 0 <= x_hat <= sqrt(x_bar) by cyclic exact coordinate ascent from
    the box corner, the scaled-y direction and an optional warm start.

    Returns:
        (x_hat, y, value) for the best start
    """
    tol = SolverConfig.INNER_TOL if tol is None else tol
    max_sweeps = SolverConfig.INNER_MAX_SWEEPS if max_sweeps is None else max_sweeps
    x_bar_ = np.atleast_1d(np.asarray(x_bar_, dtype=float))
    y_bar_ = np.atleast_1d(np.asarray(y_bar_, dtype=float))
    if x_bar_.shape != y_bar_.shape:
        raise ContractError(f"x_bar and y_bar lengths differ: {x_bar_.shape}, {y_bar_.shape}")
    if np.any(x_bar_ < 0) or np.any(y_bar_ < 0):
        raise ContractError("x_bar and y_bar must be nonnegative")

    y = np.sqrt(y_bar_)
    upper = np.sqrt(x_bar_)
    if not np.any(y_bar_ > 0) or not np.any(x_bar_ > 0):
        return np.zeros_like(upper), y, 0.0

    starts = [upper.copy()]
    positive = y > 0
    scale = float(np.min(upper[positive] / y[positive]))
    starts.append(np.where(positive, scale * y, 0.0))
    if warm_start is not None:
        starts.append(np.clip(np.asarray(warm_start, dtype=float), 0.0, upper))

    best_x, best_value = None, -math.inf
    for start in starts:
        x, value = _coordinate_ascent(start, y, upper, tol, max_sweeps)
        if value > best_value:
            best_x, best_value = x, value
    return best_x, y, best_value


def ps_step(
    state: PowerSplitState,
    p_t: float,
    eta: float,
    g_hat,
    x_hat: np.ndarray,
    rho_floor: float | None = None,
) -> np.ndarray | None:
    """
    Lower the power split of the relay with the largest amplification gap.

    Solves x_bar(rho') = x_bar(rho) - beta G exactly for that relay.

    Returns:
        Updated rho, or None when every gap is within tolerance (converged)
    """
    rho_floor = SolverConfig.RHO_FLOOR if rho_floor is None else rho_floor
    gaps = state.x_bar - np.asarray(x_hat, dtype=float) ** 2
    if np.all(gaps <= GAP_TOL * (1.0 + state.x_bar)):
        return None

    m = int(np.argmax(gaps))
    target = state.x_bar[m] - state.beta * gaps[m]
    c = p_t * state.s2[m]
    g2 = abs(np.atleast_1d(np.asarray(g_hat))[m]) ** 2
    rho_new = target * (1.0 + c) / (c * (eta * g2 + target))
    rho = state.rho.copy()
    rho[m] = min(max(rho_new, rho_floor), state.rho[m])
    return rho


@dataclass
class _PowerSplitRun:
    rho: np.ndarray
    x_hat: np.ndarray
    y: np.ndarray
    value: float
    trace: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def _refine_rho(run: _PowerSplitRun, s2, g_hat, p_t: float, eta: float, epsilon: float, beta: float) -> None:
    """Cyclic bounded line search over each rho_n, keeping only improvements."""
    rho_floor, rho_ceiling = SolverConfig.RHO_FLOOR, SolverConfig.RHO_CEILING

    def value_at(rho: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        state = PowerSplitState.build(rho, s2, g_hat, p_t, eta, beta)
        x_hat, y, value = inner_beamforming(state.x_bar, state.y_bar, warm_start=run.x_hat)
        return value, x_hat, y

    for _ in range(SolverConfig.RHO_REFINE_MAX_ROUNDS):
        start = run.value
        for n in range(run.rho.shape[0]):
            def negative(r: float, n=n) -> float:
                rho = run.rho.copy()
                rho[n] = r
                return -value_at(rho)[0]

            found = minimize_scalar(negative, bounds=(rho_floor, rho_ceiling), method="bounded", options={"xatol": 1e-9})
            rho = run.rho.copy()
            rho[n] = float(found.x)
            value, x_hat, y = value_at(rho)
            if value > run.value:
                run.rho, run.x_hat, run.y, run.value = rho, x_hat, y, value
                run.trace.append(value)
        if run.value - start <= epsilon:
            break


def _run_power_split(
    s2,
    g_hat,
    p_t: float,
    eta: float,
    epsilon: float | None = None,
    beta: float | None = None,
    rho_init: float | None = None,
    max_iter: int | None = None,
    refine: bool | None = None,
) -> _PowerSplitRun:
    epsilon = SolverConfig.AO_EPSILON if epsilon is None else epsilon
    beta = SolverConfig.AO_BETA if beta is None else beta
    rho_init = SolverConfig.RHO_INIT if rho_init is None else rho_init
    max_iter = SolverConfig.AO_MAX_ITER if max_iter is None else max_iter

    g_hat = np.atleast_1d(np.asarray(g_hat))
    rho = np.full(g_hat.shape[0], rho_init)
    run = _PowerSplitRun(rho=rho, x_hat=np.zeros_like(rho), y=np.zeros_like(rho), value=-math.inf)
    warm = None
    previous = None
    for iteration in range(1, max_iter + 1):
        state = PowerSplitState.build(run.rho, s2, g_hat, p_t, eta, beta)
        x_hat, y, value = inner_beamforming(state.x_bar, state.y_bar, warm_start=warm)
        run.x_hat, run.y, run.value, run.iterations = x_hat, y, value, iteration
        run.trace.append(value)
        warm = x_hat
        if previous is not None and abs(value - previous) <= epsilon:
            run.converged = True
            break
        previous = value
        rho_next = ps_step(state, p_t, eta, g_hat, x_hat)
        if rho_next is None:
            run.converged = True
            break
        run.rho = rho_next

    if not run.converged:
        logger.warning(f"Power-split iteration hit the {max_iter}-iteration cap at value {run.value:.10g}")
    if SolverConfig.RHO_REFINE if refine is None else refine:
        _refine_rho(run, s2, g_hat, p_t, eta, epsilon, beta)
    return run


def _relay_operating_point(
    run: _PowerSplitRun,
    enh: EnhancedChannels,
    w1: np.ndarray,
) -> OperatingPoint:
    g_abs = np.abs(enh.g_hat)
    safe = np.where(g_abs > 0, g_abs, 1.0)
    x = np.where(g_abs > 0, run.x_hat / safe, 0.0)
    return OperatingPoint(
        w1=w1,
        w2=matched_filter(enh.f0_hat),
        rho=run.rho,
        p=x ** 2 * (1.0 + run.y ** 2),
        x=x,
        y=run.y,
        x_hat=run.x_hat,
        active=enh.active,
    )


def empty_bound(enh: EnhancedChannels, kind: BoundKind, p_t: float, diagnostic: str, w1: np.ndarray | None = None) -> BoundResult:
    """Zero-valued bound for configurations the direct-link-free bound cannot serve."""
    w1 = matched_filter(enh.f0_hat) if w1 is None else w1
    na = enh.num_active
    zeros = np.zeros(na)
    op = OperatingPoint(
        w1=w1,
        w2=matched_filter(enh.f0_hat),
        rho=np.full(na, SolverConfig.RHO_INIT),
        p=zeros,
        x=zeros,
        y=zeros,
        x_hat=zeros,
        active=enh.active,
    )
    return BoundResult(
        gamma1=0.0,
        gamma2=0.0,
        gamma=0.0,
        kind=kind,
        op=op,
        iterations=0,
        converged=True,
        trace=(0.0,),
        gamma1_reference=p_t * abs(np.vdot(enh.f0_hat, w1)) ** 2,
        diagnostics=(diagnostic,),
    )


def _relay_result(run: _PowerSplitRun, enh: EnhancedChannels, w1: np.ndarray, kind: BoundKind, p_t: float) -> BoundResult:
    return BoundResult(
        gamma1=0.0,
        gamma2=run.value,
        gamma=run.value,
        kind=kind,
        op=_relay_operating_point(run, enh, w1),
        iterations=run.iterations,
        converged=run.converged,
        trace=tuple(run.trace),
        gamma1_reference=p_t * abs(np.vdot(enh.f0_hat, w1)) ** 2,
    )


def eval_bound_relay(
    enh: EnhancedChannels,
    p_t: float,
    eta: float,
    epsilon: float | None = None,
    beta: float | None = None,
    refine: bool | None = None,
) -> BoundResult:
    """
    Direct-link-free bound.

    Fixes w1 by max-min beamforming over the active relays, then alternates
    inner_beamforming with ps_step until the objective changes by at most
    epsilon, followed by a per-relay line search over rho.
    """
    if enh.num_active == 0:
        raise ContractError("the relay bound needs at least one active relay")

    w1, s_min2 = solve_min_gain_beamforming(list(enh.f_hat))
    scale = max(1.0, float(np.max(np.sum(np.abs(enh.f_hat) ** 2, axis=1))))
    if s_min2 <= 1e-12 * scale:
        logger.info(f"Relay bound: s_min is zero for active relays {enh.active}")
        return empty_bound(enh, "relay", p_t, "s_min-zero", w1=w1)

    run = _run_power_split(s_min2, enh.g_hat, p_t, eta, epsilon=epsilon, beta=beta, refine=refine)
    logger.debug(f"Relay bound: gamma={run.value:.10g} after {run.iterations} iterations, s_min2={s_min2:.6g}")
    return _relay_result(run, enh, w1, "relay", p_t)


def eval_bound_single_antenna(
    enh: EnhancedChannels,
    p_t: float,
    eta: float,
    epsilon: float | None = None,
    beta: float | None = None,
    refine: bool | None = None,
) -> BoundResult:
    """Direct-link-free bound for a single-antenna HAP, with s_n^2 = |f_n|^2."""
    if enh.num_antennas != 1:
        raise ContractError(f"single-antenna bound needs K = 1, got K = {enh.num_antennas}")
    if enh.num_active == 0:
        raise ContractError("the single-antenna bound needs at least one active relay")

    w1 = np.ones(1, dtype=complex)
    s2 = np.abs(enh.f_hat[:, 0]) ** 2
    run = _run_power_split(s2, enh.g_hat, p_t, eta, epsilon=epsilon, beta=beta, refine=refine)
    return _relay_result(run, enh, w1, "single-antenna", p_t)


def evaluate_bound(enh: EnhancedChannels, kind: BoundKind, p_t: float, eta: float) -> BoundResult:
    """Dispatch by bound kind; relay kinds without active relays score zero."""
    if kind == "direct":
        return eval_bound_direct(enh, p_t, eta)
    if kind not in ("relay", "single-antenna"):
        raise ContractError(f"unknown bound kind {kind!r}")
    if enh.num_active == 0:
        return empty_bound(enh, kind, p_t, "no-active-relays")
    if kind == "relay":
        return eval_bound_relay(enh, p_t, eta)
    return eval_bound_single_antenna(enh, p_t, eta)


def with_diagnostic(result: BoundResult, diagnostic: str) -> BoundResult:
    return replace(result, diagnostics=(*result.diagnostics, diagnostic))
