"""Pydantic schemas for scenarios, sweeps and report rows."""

from hybrid_relay.schemas.models import (
    PathLossModel,
    Scenario,
    SweepSpec,
    SweepRow,
    CSV_COLUMNS,
    Metric,
    BoundKind,
    BoundChoice,
    SweepAxis,
)

__all__ = [
    "PathLossModel",
    "Scenario",
    "SweepSpec",
    "SweepRow",
    "CSV_COLUMNS",
    "Metric",
    "BoundKind",
    "BoundChoice",
    "SweepAxis",
]
