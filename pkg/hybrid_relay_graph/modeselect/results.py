"""Selection outcomes shared by the greedy loop, the oracle and the CLI."""

import math
from dataclasses import dataclass

from hybrid_relay.schemas.models import BoundKind
from hybrid_relay_graph.bounds import BoundResult, OperatingPoint
from hybrid_relay_graph.channel import ModeAssignment, ReflectionPlan


def passive_label(passive) -> str:
    """Ascending 1-based relay numbers joined by '-'; empty for no passive relay."""
    return "-".join(str(n + 1) for n in sorted(passive))


def throughput_bps_hz(gamma: float) -> float:
    """Two-hop spectral efficiency (1/2) log2(1 + gamma)."""
    return 0.5 * math.log2(1.0 + max(gamma, 0.0))


@dataclass(frozen=True)
class SelectionResult:
    """
    Mode assignment chosen by a selection procedure.

    per_iteration holds (switched relay, gamma after the switch) for every
    accepted switch, in order; its gammas strictly increase.
    """
    mode: ModeAssignment
    refl: ReflectionPlan
    op: OperatingPoint
    gamma: float
    per_iteration: tuple[tuple[int, float], ...]
    metric: str
    baseline_gamma: float
    bound_kind: BoundKind
    iterations: int
    bound: BoundResult

    @property
    def passive_set(self) -> tuple[int, ...]:
        return self.mode.passive

    @property
    def passive_label(self) -> str:
        return passive_label(self.mode.passive)

    @property
    def throughput_bps_hz(self) -> float:
        return throughput_bps_hz(self.gamma)

    def summary(self) -> dict:
        return {
            "metric": self.metric,
            "bound": self.bound_kind,
            "gamma": self.gamma,
            "baseline_gamma": self.baseline_gamma,
            "throughput_bps_hz": self.throughput_bps_hz,
            "passive_set": self.passive_label,
            "phases": {n + 1: theta for n, theta in self.refl.phases().items()},
            "per_iteration": [(n + 1, gamma) for n, gamma in self.per_iteration],
            "iterations": self.iterations,
        }
