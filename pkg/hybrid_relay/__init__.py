"""Hybrid Relay Toolkit - application layer: scenarios, sweeps and CSV reports."""

from hybrid_relay.schemas.models import Scenario, SweepSpec

__all__ = [
    "Scenario",
    "SweepSpec",
]
