"""Power budget of the passive relays."""

import numpy as np

from hybrid_relay_graph.bounds import OperatingPoint
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan


def passive_harvest(
    mode: ModeAssignment,
    refl: ReflectionPlan,
    op: OperatingPoint,
    p_t: float,
    ch: ChannelSet,
) -> dict[int, float]:
    """Power (mW) each passive relay harvests over both hops: (1 - |Gamma|^2) p_t (|f^H w1|^2 + |f^H w2|^2)."""
    harvest = {}
    for n in mode.passive:
        f = ch.F[n]
        incident = abs(np.vdot(f, op.w1)) ** 2 + abs(np.vdot(f, op.w2)) ** 2
        harvest[n] = (1.0 - abs(refl.coefficient(n)) ** 2) * p_t * incident
    return harvest


def check_passive_power(
    mode: ModeAssignment,
    refl: ReflectionPlan,
    op: OperatingPoint,
    p_t: float,
    p_c: float,
    ch: ChannelSet,
) -> dict[int, bool]:
    """Per passive relay: can the harvested share cover the circuit power p_c (inclusive)?"""
    return {n: bool(p_c <= power) for n, power in passive_harvest(mode, refl, op, p_t, ch).items()}
