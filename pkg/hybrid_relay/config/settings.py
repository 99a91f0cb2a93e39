"""Configuration and environment settings."""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def init_tracing():
    """Initialize LangSmith tracing defaults for the mode-selection graph."""
    # Opt in from your .env file:
    # LANGCHAIN_TRACING_V2=true
    # LANGCHAIN_PROJECT=Hybrid_Relay_Selection
    # LANGCHAIN_API_KEY=your_langsmith_api_key
    os.environ.setdefault("LANGCHAIN_TRACING_V2", "false")
    os.environ.setdefault("LANGCHAIN_PROJECT", "Hybrid_Relay_Selection")


# Initialize tracing on module load
init_tracing()


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


class SolverConfig:
    """Numerical settings for the solvers and search loops."""

    # Semidefinite solver (Clarabel through cvxpy)
    SDP_TOL = float(os.getenv("HYBRID_SDP_TOL", "1e-8"))
    SDP_MAX_ITER = int(os.getenv("HYBRID_SDP_MAX_ITER", "200"))

    # Beamformer extraction
    RANDOMIZATION_TRIALS = int(os.getenv("HYBRID_RANDOMIZATION_TRIALS", "200"))
    RANDOMIZATION_SEED = int(os.getenv("HYBRID_RANDOMIZATION_SEED", "0"))

    # Alternating optimization of the direct-link-free bound
    AO_EPSILON = float(os.getenv("HYBRID_AO_EPSILON", "1e-5"))
    AO_BETA = float(os.getenv("HYBRID_AO_BETA", "0.5"))
    AO_MAX_ITER = int(os.getenv("HYBRID_AO_MAX_ITER", "2000"))
    RHO_INIT = float(os.getenv("HYBRID_RHO_INIT", "0.5"))
    RHO_FLOOR = float(os.getenv("HYBRID_RHO_FLOOR", "1e-9"))
    RHO_CEILING = 1.0 - RHO_FLOOR
    # Per-relay line search over rho after the gap-driven loop
    RHO_REFINE = _env_flag("HYBRID_RHO_REFINE", "true")
    RHO_REFINE_MAX_ROUNDS = int(os.getenv("HYBRID_RHO_REFINE_MAX_ROUNDS", "20"))

    # Inner network beamforming (coordinate ascent)
    INNER_TOL = float(os.getenv("HYBRID_INNER_TOL", "1e-10"))
    INNER_MAX_SWEEPS = int(os.getenv("HYBRID_INNER_MAX_SWEEPS", "500"))

    # Phase search and greedy selection
    PHASE_GRID = int(os.getenv("HYBRID_PHASE_GRID", "20"))
    PHASE_MAX_ROUNDS = int(os.getenv("HYBRID_PHASE_MAX_ROUNDS", "20"))
    GREEDY_EPSILON = float(os.getenv("HYBRID_GREEDY_EPSILON", "1e-5"))
    # Cyclic re-optimization of every passive phase after the greedy loop
    PHASE_POLISH = _env_flag("HYBRID_PHASE_POLISH", "false")
    # Set to "false" to keep the raw relay-to-receiver channel (ablation)
    ENHANCE_FORWARD = _env_flag("HYBRID_ENHANCE_FORWARD", "true")

    # Brute-force oracle enumerates 2^N assignments
    ORACLE_MAX_RELAYS = 12

    # Sweep execution
    MAX_CONCURRENT = int(os.getenv("HYBRID_MAX_CONCURRENT", "4"))

    # Graph execution settings
    # Floor on the step limit; a run over N relays gets at least 2 N + 10
    RECURSION_LIMIT = int(os.getenv("HYBRID_RECURSION_LIMIT", "25"))
