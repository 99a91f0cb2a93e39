"""Experiment sweeps over one scenario parameter, with deterministic CSV output."""

import asyncio
import logging
import math
import os
import sys
from pathlib import Path

import cvxpy as cp
import pandas as pd
from langgraph.errors import GraphRecursionError

from hybrid_relay.config.scenario import load_scenario, load_sweep_spec, parse_scenario
from hybrid_relay.config.settings import SolverConfig
from hybrid_relay.schemas.models import CSV_COLUMNS, Scenario, SweepAxis, SweepRow, SweepSpec
from hybrid_relay_graph.channel import ChannelSet, generate_channels
from hybrid_relay_graph.config import BASELINE_METRIC
from hybrid_relay_graph.errors import ContractError, HybridRelayError, SolverError
from hybrid_relay_graph.modeselect.baseline import all_active_baseline
from hybrid_relay_graph.modeselect.results import passive_label, throughput_bps_hz
from hybrid_relay_graph.workflow import select_modes


logger = logging.getLogger(__name__)


def apply_axis(scenario: Scenario, axis: SweepAxis, value: float) -> Scenario:
    """
    Scenario with one swept parameter replaced.

    d0 moves the receiver along the HAP-receiver direction to distance value.
    g_phase leaves the scenario as is; see apply_channel_axis.

    Raises:
        ScenarioError: if the updated scenario violates the schema
    """
    data = scenario.model_dump()
    if axis == "p_t":
        data["pt_mw"] = value
    elif axis == "alpha":
        data["pathloss"] = {**data["pathloss"], "alpha": value}
    elif axis in ("eta", "gamma_max"):
        data[axis] = value
    elif axis == "d0":
        (hx, hy), (rx, ry) = scenario.hap_xy, scenario.rx_xy
        scale = value / scenario.hap_rx_distance
        data["rx_xy"] = (hx + scale * (rx - hx), hy + scale * (ry - hy))
    elif axis == "g_phase":
        pass
    else:
        raise ContractError(f"unknown sweep axis {axis!r}")
    return parse_scenario(data)


def apply_channel_axis(ch: ChannelSet, axis: SweepAxis, value: float) -> ChannelSet:
    """Channel-level part of a sweep axis: g_phase turns every g_n by e^{j value}."""
    if axis == "g_phase":
        return ch.with_forward_rotation(value)
    return ch


def _failure_row(seed: int, spec: SweepSpec, value: float, metric: str, status: str) -> SweepRow:
    return SweepRow(
        seed=seed,
        axis=spec.axis,
        axis_value=value,
        metric=metric,
        bound=spec.bound_kind,
        gamma=math.nan,
        throughput_bps_hz=math.nan,
        throughput_bps=math.nan,
        n_passive=0,
        passive_set="",
        iterations=0,
        status=status,
    )


def evaluate_row(base: Scenario, spec: SweepSpec, seed: int, value: float, metric: str) -> SweepRow:
    """
    One sweep row: regenerate channels for (seed, value) and run `metric`
    (or the all-active baseline). Failures become a row with a status.
    """
    try:
        scenario = parse_scenario({**apply_axis(base, spec.axis, value).model_dump(), "seed": seed})
        ch = apply_channel_axis(generate_channels(scenario), spec.axis, value)
        if metric == BASELINE_METRIC:
            kind, bound = all_active_baseline(scenario, ch, spec.bound_kind)
            gamma, passive, iterations = bound.gamma, (), 0
        else:
            result = select_modes(scenario, ch, metric, spec.bound_kind)
            kind, gamma, passive, iterations = result.bound_kind, result.gamma, result.passive_set, result.iterations
    except (SolverError, cp.SolverError) as e:
        logger.warning(f"Row seed={seed} {spec.axis}={value} {metric}: solver failure: {e}")
        return _failure_row(seed, spec, value, metric, "solver-failure")
    except (HybridRelayError, ValueError, GraphRecursionError) as e:
        logger.warning(f"Row seed={seed} {spec.axis}={value} {metric}: {e}")
        return _failure_row(seed, spec, value, metric, "error")

    rate = throughput_bps_hz(gamma)
    return SweepRow(
        seed=seed,
        axis=spec.axis,
        axis_value=value,
        metric=metric,
        bound=kind,
        gamma=gamma,
        throughput_bps_hz=rate,
        throughput_bps=rate * scenario.bandwidth_hz,
        n_passive=len(passive),
        passive_set=passive_label(passive),
        iterations=iterations,
        status="ok",
    )


async def run_sweep(
    spec: SweepSpec,
    scenario: Scenario | None = None,
    max_concurrent: int | None = None,
) -> list[SweepRow]:
    """
    Evaluate every (seed, value, metric) row plus an all-active row per (seed, value).

    Rows run concurrently on worker threads, limited by a semaphore; the
    returned table is ordered by (seed, axis_value, metric) regardless of
    completion order.

    Args:
        spec: Sweep definition
        scenario: Base scenario; None loads spec.scenario (or the canonical topology)
        max_concurrent: Worker limit (default: SolverConfig.MAX_CONCURRENT)

    Returns:
        Sorted list of SweepRow
    """
    base = scenario if scenario is not None else load_scenario(spec.scenario)
    max_concurrent = SolverConfig.MAX_CONCURRENT if max_concurrent is None else max_concurrent
    semaphore = asyncio.Semaphore(max_concurrent)

    jobs = [
        (seed, value, metric)
        for seed in spec.seeds
        for value in spec.values
        for metric in (BASELINE_METRIC, *spec.metrics)
    ]
    logger.info(f"Sweep over {spec.axis}: {len(jobs)} rows, {max_concurrent} concurrent workers")

    async def run_with_semaphore(seed: int, value: float, metric: str) -> SweepRow:
        async with semaphore:
            return await asyncio.to_thread(evaluate_row, base, spec, seed, value, metric)

    rows = await asyncio.gather(*(run_with_semaphore(*job) for job in jobs))
    return sorted(rows, key=lambda row: (row.seed, row.axis_value, row.metric))


def rows_to_frame(rows: list[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=CSV_COLUMNS)


def emit_csv(rows: list[SweepRow], path: str | Path | None = None) -> str:
    """
    Render the sweep table as CSV (12 significant digits, UNIX newlines).

    Returns:
        The CSV text; also written to path when given
    """
    text = rows_to_frame(rows).to_csv(index=False, float_format="%.12g", lineterminator="\n", na_rep="nan")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="")
    return text


async def run_cli_sweep(spec: SweepSpec | str, output_file: str | None = None) -> list[SweepRow]:
    """
    Run a sweep from the CLI and print a summary.

    Args:
        spec: SweepSpec or path to a sweep JSON document
        output_file: CSV destination; None prints the CSV to stdout
    """
    if not isinstance(spec, SweepSpec):
        spec = load_sweep_spec(spec)
    rows = await run_sweep(spec)

    if output_file is None:
        print(emit_csv(rows), end="")
    else:
        emit_csv(rows, output_file)

    # Keep stdout clean when it carries the CSV
    out = sys.stderr if output_file is None else sys.stdout
    failed = sum(1 for row in rows if row.status != "ok")
    print(f"\n{'='*50}", file=out)
    print("Sweep Summary", file=out)
    print(f"{'='*50}", file=out)
    print(f"Axis: {spec.axis} ({len(spec.values)} values, {len(spec.seeds)} seeds)", file=out)
    print(f"Rows: {len(rows)}", file=out)
    print(f"Successful: {len(rows) - failed}", file=out)
    print(f"Failed: {failed}", file=out)
    if output_file is not None:
        print(f"Output file: {os.path.abspath(output_file)}", file=out)
    print(f"{'='*50}\n", file=out)
    return rows
