"""Small dense semidefinite programs over Hermitian blocks, and beamformer extraction.

Complex Hermitian blocks are posed through the real-symmetric embedding
[[Re, -Im], [Im, Re]] and solved with Clarabel (primal-dual interior point,
Nesterov-Todd scaling) through cvxpy.
"""

import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

import cvxpy as cp
import numpy as np

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay_graph.errors import ContractError, SolverError


logger = logging.getLogger(__name__)


SolverStatus = Literal["optimal", "max-iterations", "infeasible"]
Sense = Literal["<=", ">=", "=="]

PSD_TOL = 1e-8
RANK_ONE_RATIO = 1.0 - 1e-6
HERMITIAN_TOL = 1e-9

_STATUS_MAP: dict[str, SolverStatus] = {
    cp.OPTIMAL: "optimal",
    cp.OPTIMAL_INACCURATE: "max-iterations",
    cp.USER_LIMIT: "max-iterations",
    cp.INFEASIBLE: "infeasible",
    cp.INFEASIBLE_INACCURATE: "infeasible",
    # an unbounded maximization has an infeasible dual
    cp.UNBOUNDED: "infeasible",
    cp.UNBOUNDED_INACCURATE: "infeasible",
}


def _merge(left: Mapping, right: Mapping) -> dict:
    merged = dict(left)
    for key, value in right.items():
        merged[key] = merged[key] + value if key in merged else value
    return merged


@dataclass(frozen=True)
class AffineForm:
    """
    Real affine expression: sum Re tr(C_b W_b) + sum c_s s + constant.

    Attributes:
        blocks: Hermitian coefficient matrix per block name
        scalars: coefficient per scalar variable name
        constant: constant offset
    """
    blocks: Mapping[str, np.ndarray] = field(default_factory=dict)
    scalars: Mapping[str, float] = field(default_factory=dict)
    constant: float = 0.0

    @classmethod
    def const(cls, value: float) -> "AffineForm":
        return cls(constant=float(value))

    @classmethod
    def var(cls, name: str, coef: float = 1.0) -> "AffineForm":
        return cls(scalars={name: float(coef)})

    @classmethod
    def quadratic(cls, block: str, f: np.ndarray, coef: float = 1.0) -> "AffineForm":
        """coef * f^H W f."""
        f = np.asarray(f, dtype=complex)
        return cls(blocks={block: coef * np.outer(f, f.conj())})

    @classmethod
    def trace(cls, block: str, size: int, coef: float = 1.0) -> "AffineForm":
        return cls(blocks={block: coef * np.eye(size, dtype=complex)})

    def _coerce(self, other) -> "AffineForm":
        return other if isinstance(other, AffineForm) else AffineForm.const(other)

    def __add__(self, other) -> "AffineForm":
        other = self._coerce(other)
        return AffineForm(
            blocks=_merge(self.blocks, other.blocks),
            scalars=_merge(self.scalars, other.scalars),
            constant=self.constant + other.constant,
        )

    __radd__ = __add__

    def __mul__(self, scale: float) -> "AffineForm":
        return AffineForm(
            blocks={k: scale * v for k, v in self.blocks.items()},
            scalars={k: scale * v for k, v in self.scalars.items()},
            constant=scale * self.constant,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "AffineForm":
        return self * -1.0

    def __sub__(self, other) -> "AffineForm":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AffineForm":
        return self._coerce(other) - self

    def evaluate(self, blocks: Mapping[str, np.ndarray], scalars: Mapping[str, float]) -> float:
        value = self.constant
        for name, coef in self.blocks.items():
            value += float(np.real(np.trace(coef @ blocks[name])))
        for name, coef in self.scalars.items():
            value += coef * scalars[name]
        return value


@dataclass(frozen=True)
class LinearConstraint:
    lhs: AffineForm
    sense: Sense
    rhs: float = 0.0


@dataclass(frozen=True)
class LmiConstraint:
    """Symmetric matrix of affine forms constrained PSD; only the upper triangle is read."""
    entries: tuple[tuple[AffineForm, ...], ...]

    def __post_init__(self):
        size = len(self.entries)
        if size == 0 or any(len(row) != size for row in self.entries):
            raise ContractError("LMI entries must form a nonempty square matrix")

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SdpProblem:
    """
    Maximize a linear objective over Hermitian PSD blocks and free scalars.

    Attributes:
        blocks: side length per block name
        scalars: scalar variable names
        objective: maximized affine form
        constraints: linear constraints
        lmis: linear matrix inequalities
    """
    blocks: Mapping[str, int]
    scalars: tuple[str, ...]
    objective: AffineForm
    constraints: tuple[LinearConstraint, ...] = ()
    lmis: tuple[LmiConstraint, ...] = ()

    def __post_init__(self):
        forms = [self.objective, *(c.lhs for c in self.constraints)]
        forms += [entry for lmi in self.lmis for row in lmi.entries for entry in row]
        for form in forms:
            for name, coef in form.blocks.items():
                if name not in self.blocks:
                    raise ContractError(f"unknown block {name!r}")
                size = self.blocks[name]
                if coef.shape != (size, size):
                    raise ContractError(f"coefficient for block {name!r} has shape {coef.shape}, expected ({size}, {size})")
                if not np.allclose(coef, coef.conj().T, atol=HERMITIAN_TOL * (1.0 + np.abs(coef).max())):
                    raise ContractError(f"coefficient for block {name!r} is not Hermitian")
            for name in form.scalars:
                if name not in self.scalars:
                    raise ContractError(f"unknown scalar {name!r}")


@dataclass(frozen=True)
class SdpSolution:
    status: SolverStatus
    objective: float
    gap: float
    iterations: int
    blocks: Mapping[str, np.ndarray] = field(default_factory=dict)
    scalars: Mapping[str, float] = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def embed(c: np.ndarray) -> np.ndarray:
    """Real-symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix."""
    re, im = np.real(c), np.imag(c)
    return np.block([[re, -im], [im, re]])


def unembed(s: np.ndarray) -> np.ndarray:
    """Hermitian matrix represented by a real embedding (averaging the redundant copies)."""
    n = s.shape[0] // 2
    re = 0.5 * (s[:n, :n] + s[n:, n:])
    im = 0.5 * (s[n:, :n] - s[:n, n:])
    return re + 1j * im


def project_psd(w: np.ndarray) -> np.ndarray:
    """Hermitian part of w with negative eigenvalues clipped to zero."""
    w = 0.5 * (w + w.conj().T)
    eigvals, vectors = np.linalg.eigh(w)
    if eigvals[0] >= 0:
        return w
    eigvals = np.clip(eigvals, 0.0, None)
    return (vectors * eigvals) @ vectors.conj().T


def _duality_gap(problem: cp.Problem) -> float:
    stats = problem.solver_stats
    extra = getattr(stats, "extra_stats", None) if stats is not None else None
    primal = getattr(extra, "obj_val", None)
    dual = getattr(extra, "obj_val_dual", None)
    if primal is None or dual is None:
        return math.nan
    return abs(primal - dual) / max(1.0, abs(primal))


def solve_sdp(problem: SdpProblem, tol: float | None = None, max_iter: int | None = None) -> SdpSolution:
    """
    Solve an SdpProblem.

    Args:
        problem: Problem definition
        tol: Relative gap and feasibility tolerance in (0, 1e-2]
        max_iter: Interior-point iteration cap

    Returns:
        SdpSolution; blocks are empty when the solver produced no primal point
    """
    tol = SolverConfig.SDP_TOL if tol is None else tol
    max_iter = SolverConfig.SDP_MAX_ITER if max_iter is None else max_iter
    if not 0.0 < tol <= 1e-2:
        raise ContractError(f"tol must lie in (0, 1e-2], got {tol}")

    block_vars = {
        name: cp.Variable((2 * size, 2 * size), symmetric=True, name=name)
        for name, size in problem.blocks.items()
    }
    scalar_vars = {name: cp.Variable(name=name) for name in problem.scalars}

    def compile_form(form: AffineForm):
        expr = cp.Constant(form.constant)
        for name, coef in form.blocks.items():
            # Re tr(C W) = tr(embed(C) S) / 2
            expr = expr + 0.5 * cp.sum(cp.multiply(embed(coef), block_vars[name]))
        for name, coef in form.scalars.items():
            expr = expr + coef * scalar_vars[name]
        return expr

    constraints = []
    for name, s in block_vars.items():
        n = problem.blocks[name]
        constraints += [s >> 0, s[:n, :n] == s[n:, n:], s[:n, n:] == -s[n:, :n]]

    for c in problem.constraints:
        lhs = compile_form(c.lhs)
        if c.sense == "<=":
            constraints.append(lhs <= c.rhs)
        elif c.sense == ">=":
            constraints.append(lhs >= c.rhs)
        else:
            constraints.append(lhs == c.rhs)

    for lmi in problem.lmis:
        m = lmi.size
        aux = cp.Variable((m, m), symmetric=True)
        constraints.append(aux >> 0)
        for i in range(m):
            for j in range(i, m):
                constraints.append(aux[i, j] == compile_form(lmi.entries[i][j]))

    cvx_problem = cp.Problem(cp.Maximize(compile_form(problem.objective)), constraints)
    try:
        cvx_problem.solve(
            solver=cp.CLARABEL,
            max_iter=max_iter,
            tol_gap_abs=tol,
            tol_gap_rel=tol,
            tol_feas=tol,
        )
    except cp.SolverError as e:
        logger.warning(f"Clarabel failed on a {len(problem.blocks)}-block SDP: {e}")
        return SdpSolution(status="max-iterations", objective=math.nan, gap=math.nan, iterations=max_iter)

    status = _STATUS_MAP.get(cvx_problem.status, "max-iterations")
    stats = cvx_problem.solver_stats
    iterations = int(stats.num_iters) if stats is not None and stats.num_iters is not None else 0
    gap = _duality_gap(cvx_problem)

    if status == "infeasible" or any(v.value is None for v in block_vars.values()):
        logger.warning(f"SDP ended with solver status {cvx_problem.status!r} after {iterations} iterations")
        return SdpSolution(status=status, objective=math.nan, gap=gap, iterations=iterations)

    blocks = {name: project_psd(unembed(s.value)) for name, s in block_vars.items()}
    scalars = {name: float(v.value) for name, v in scalar_vars.items()}
    if status != "optimal":
        logger.warning(f"SDP stopped early with status {cvx_problem.status!r} after {iterations} iterations")
    logger.debug(f"SDP {status}: objective={cvx_problem.value:.10g}, gap={gap:.3g}, iterations={iterations}")
    return SdpSolution(
        status=status,
        objective=float(cvx_problem.value),
        gap=gap,
        iterations=iterations,
        blocks=blocks,
        scalars=scalars,
    )


def extract_beamformer(
    w: np.ndarray,
    objective: Callable[[np.ndarray], float],
    trials: int | None = None,
    seed: int | None = None,
) -> np.ndarray:
    """
    Recover a unit-norm beamformer from a PSD matrix solution.

    Rank-one matrices return their top eigenvector. Otherwise the candidate
    pool holds every eigenvector plus `trials` randomized vectors
    W^(1/2) z, alternating Gaussian z and uniform-phase z, each normalized;
    the candidate with the highest objective wins (first on ties).

    Raises:
        ContractError: if w has an eigenvalue below -1e-8 (1 + ||w||)
    """
    trials = SolverConfig.RANDOMIZATION_TRIALS if trials is None else trials
    seed = SolverConfig.RANDOMIZATION_SEED if seed is None else seed

    w = 0.5 * (w + w.conj().T)
    eigvals, vectors = np.linalg.eigh(w)
    if eigvals[0] < -PSD_TOL * (1.0 + np.linalg.norm(w, 2)):
        raise ContractError(f"matrix is not PSD: minimum eigenvalue {eigvals[0]:.3g}")
    eigvals = np.clip(eigvals, 0.0, None)
    m = w.shape[0]
    total = float(eigvals.sum())

    if total <= 0.0:
        candidates = [np.eye(m, dtype=complex)[:, i] for i in range(m)]
    elif eigvals[-1] / total >= RANK_ONE_RATIO:
        return vectors[:, -1]
    else:
        root = (vectors * np.sqrt(eigvals)) @ vectors.conj().T
        rng = np.random.default_rng(seed)
        candidates = [vectors[:, i] for i in range(m - 1, -1, -1)]
        for t in range(trials):
            if t % 2 == 0:
                z = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
            else:
                z = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=m))
            v = root @ z
            norm = np.linalg.norm(v)
            if norm > 0:
                candidates.append(v / norm)

    best, best_score = candidates[0], objective(candidates[0])
    for candidate in candidates[1:]:
        score = objective(candidate)
        if score > best_score:
            best, best_score = candidate, score
    return best


def min_gain(vectors: np.ndarray, w: np.ndarray) -> float:
    """min_n |f_n^H w|^2 over the rows of vectors."""
    return float(np.min(np.abs(vectors.conj() @ w) ** 2))


def solve_min_gain_beamforming(
    vectors: Sequence[np.ndarray],
    tol: float | None = None,
    trials: int | None = None,
    seed: int | None = None,
) -> tuple[np.ndarray, float]:
    """
    Max-min beamforming: max_w min_n |f_n^H w|^2 subject to ||w|| <= 1.

    Solves the SDP relaxation (max t s.t. f_n^H W f_n >= t, trace W <= 1,
    W PSD) and extracts w1 scored by its realized min-gain. The vectors are
    divided by their largest norm before solving so the solver sees O(1)
    data; w1 is unaffected and s_min2 is measured on the original vectors.

    Returns:
        (w1, s_min2) where s_min2 is the realized min-gain of w1
    """
    if len(vectors) == 0:
        raise ContractError("min-gain beamforming needs at least one channel vector")
    stacked = np.array([np.asarray(f, dtype=complex) for f in vectors])
    k = stacked.shape[1]
    if not np.any(stacked):
        w1 = np.zeros(k, dtype=complex)
        w1[0] = 1.0
        return w1, 0.0

    scale = float(np.max(np.linalg.norm(stacked, axis=1)))
    scaled = stacked / scale
    constraints = [
        LinearConstraint(AffineForm.quadratic("W", f) - AffineForm.var("t"), ">=")
        for f in scaled
    ]
    constraints.append(LinearConstraint(AffineForm.trace("W", k), "<=", 1.0))
    problem = SdpProblem(
        blocks={"W": k},
        scalars=("t",),
        objective=AffineForm.var("t"),
        constraints=tuple(constraints),
    )
    solution = solve_sdp(problem, tol=tol)
    if not solution.is_optimal:
        raise SolverError(f"min-gain SDP ended with status {solution.status}", solution)

    w1 = extract_beamformer(solution.blocks["W"], lambda w: min_gain(scaled, w), trials=trials, seed=seed)
    s_min2 = min_gain(stacked, w1)
    logger.debug(
        f"Min-gain beamforming: relaxation {solution.objective * scale**2:.10g}, realized {s_min2:.10g}"
    )
    return w1, s_min2
