"""Search-space definitions for the mode-selection workflow."""

import math
from dataclasses import dataclass

import numpy as np

from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import BoundChoice, BoundKind, Metric


# Metrics scored by the selection loop, in report order
METRICS: tuple[Metric, ...] = ("max-snr", "max-dr", "max-rr", "max-dg", "min-rf")

# Metric label of the all-active reference row in sweeps
BASELINE_METRIC = "all-active"

METRIC_DESCRIPTIONS = {
    "max-snr": "bound value after phase optimization with bound re-solve",
    "max-dr": "direct-link SNR at the phase-optimized theta, w1 held fixed",
    "max-rr": "direct-link-free bound on the reduced active set",
    "max-dg": "direct channel gain at the analytic phase optimum",
    "min-rf": "negated RF power harvested by the candidate",
}


@dataclass(frozen=True)
class PhaseGrid:
    """M evenly spaced reflection phases 2 pi i / M on [0, 2 pi)."""

    m: int = 20

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"phase grid needs at least one point, got M = {self.m}")

    @property
    def points(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.m) / self.m

    @property
    def step(self) -> float:
        return 2.0 * math.pi / self.m

    def __len__(self) -> int:
        return self.m

    def nearest(self, theta: float) -> float:
        """Grid point closest to theta on the circle (lowest on ties)."""
        index = math.ceil((theta % (2.0 * math.pi)) / self.step - 0.5) % self.m
        return float(self.points[index])


def default_phase_grid() -> PhaseGrid:
    return PhaseGrid(SolverConfig.PHASE_GRID)


def resolve_bound_kind(choice: BoundChoice, direct_gamma: float, relay_gamma: float) -> BoundKind:
    """
    Resolve an `auto` bound choice to the bound that scores higher.

    Args:
        choice: Requested bound ("direct", "relay" or "auto")
        direct_gamma: Direct bound on the all-active configuration
        relay_gamma: Direct-link-free bound on the same configuration

    Returns:
        Concrete bound kind; direct wins ties
    """
    if choice != "auto":
        return choice
    return "direct" if direct_gamma >= relay_gamma else "relay"


def recursion_limit(num_relays: int) -> int:
    """
    Graph step limit for a selection over num_relays relays.

    A run takes one step to initialize, two per greedy round (at most
    num_relays + 1 rounds) and one to finalize.
    """
    return max(SolverConfig.RECURSION_LIMIT, 2 * num_relays + 10)
