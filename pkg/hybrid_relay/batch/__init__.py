"""Sweep processing functionality."""

from hybrid_relay.batch.processor import (
    apply_axis,
    apply_channel_axis,
    evaluate_row,
    run_sweep,
    emit_csv,
    run_cli_sweep,
)

__all__ = [
    "apply_axis",
    "apply_channel_axis",
    "evaluate_row",
    "run_sweep",
    "emit_csv",
    "run_cli_sweep",
]
