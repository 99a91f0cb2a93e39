"""Entry point for the Hybrid Relay Toolkit command line."""

import argparse
import asyncio
import json
import logging
import sys
from typing import get_args

from hybrid_relay.schemas.models import SweepAxis
from hybrid_relay_graph.config import METRIC_DESCRIPTIONS, METRICS
from hybrid_relay_graph.errors import SolverError


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SOLVER = 2


def parse_relays(text: str | None) -> list[int]:
    """'1,3,4' (1-based) -> [0, 2, 3]."""
    if not text:
        return []
    try:
        return [int(part) - 1 for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ValueError(f"relay list must be comma-separated integers, got {text!r}") from e


def write_output(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
        print(f"Results saved to: {out}", file=sys.stderr)


def load_inputs(args):
    """Scenario (seed overridden by --seed) and its channel realization."""
    from hybrid_relay.config.scenario import load_scenario, parse_scenario
    from hybrid_relay_graph.channel import generate_channels

    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = parse_scenario({**scenario.model_dump(), "seed": args.seed})
    return scenario, generate_channels(scenario)


def bound_payload(bound) -> dict:
    return {
        "kind": bound.kind,
        "gamma": bound.gamma,
        "gamma1": bound.gamma1,
        "gamma2": bound.gamma2,
        "iterations": bound.iterations,
        "converged": bound.converged,
        "active": [n + 1 for n in bound.active],
        "rho": [float(r) for r in bound.op.rho],
        "power_mw": [float(p) for p in bound.op.p],
        "diagnostics": list(bound.diagnostics),
    }


def cmd_eval(args) -> int:
    from hybrid_relay_graph.channel import ModeAssignment, ReflectionPlan
    from hybrid_relay_graph.config import resolve_bound_kind
    from hybrid_relay_graph.modeselect.baseline import evaluate_configuration
    from hybrid_relay_graph.modeselect.oracle import cyclic_phase_search
    from hybrid_relay_graph.modeselect.power import check_passive_power

    scenario, ch = load_inputs(args)
    mode = ModeAssignment.from_passive(ch.num_relays, parse_relays(args.passive))
    refl = ReflectionPlan.uniform(mode.passive, scenario.gamma_max)

    kind = args.bound
    if kind == "auto":
        direct = evaluate_configuration(scenario, ch, mode, refl, "direct")
        relay = evaluate_configuration(scenario, ch, mode, refl, "relay")
        kind = resolve_bound_kind("auto", direct.gamma, relay.gamma)
    if args.optimize_phases and mode.passive:
        refl, bound = cyclic_phase_search(scenario, ch, mode, refl, kind)
    else:
        bound = evaluate_configuration(scenario, ch, mode, refl, kind)

    flags = check_passive_power(mode, refl, bound.op, scenario.pt_mw, scenario.pc_mw, ch)
    payload = bound_payload(bound)
    payload["passive"] = {n + 1: {"theta": refl.entries[n].theta, "power_ok": flags[n]} for n in mode.passive}
    write_output(payload, args.out)
    return EXIT_OK


def cmd_select(args) -> int:
    from hybrid_relay_graph.workflow import select_modes

    scenario, ch = load_inputs(args)
    result = select_modes(scenario, ch, args.metric, args.bound)
    write_output(result.summary(), args.out)
    return EXIT_OK


def cmd_brute(args) -> int:
    from hybrid_relay_graph.modeselect.oracle import brute_force_select
    from hybrid_relay_graph.workflow import select_modes

    scenario, ch = load_inputs(args)
    result = brute_force_select(scenario, ch, args.bound, args.phase_resolution)
    payload = result.summary()
    if args.with_greedy:
        greedy = select_modes(scenario, ch, "max-snr", args.bound)
        payload["greedy_gamma"] = greedy.gamma
        payload["greedy_ratio"] = greedy.gamma / result.gamma if result.gamma > 0 else None
    write_output(payload, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    from hybrid_relay.batch.processor import run_cli_sweep
    from hybrid_relay.config.scenario import load_sweep_spec
    from hybrid_relay.schemas.models import SweepSpec

    if args.spec:
        spec = load_sweep_spec(args.spec)
    else:
        if not args.axis or not args.values:
            raise ValueError("sweep needs --spec, or --axis with --values")
        spec = SweepSpec(
            axis=args.axis,
            values=args.values,
            metrics=args.metrics or [args.metric],
            bound_kind=args.bound,
            seeds=args.seeds if args.seeds else [0 if args.seed is None else args.seed],
            scenario=args.scenario,
        )
    # Row failures are reported in the status column, not through the exit code
    asyncio.run(run_cli_sweep(spec, args.out))
    return EXIT_OK


def cmd_gen(args) -> int:
    scenario, ch = load_inputs(args)
    payload = {"scenario": scenario.model_dump(mode="json"), "channels": ch.to_dict()}
    write_output(payload, args.out)
    return EXIT_OK


def cmd_profile(args) -> int:
    from hybrid_relay_graph.modeselect.profile import profile_switch_order

    scenario, ch = load_inputs(args)
    order = parse_relays(args.order) if args.order else list(range(ch.num_relays))
    steps = profile_switch_order(scenario, ch, order, args.bound)
    payload = {
        "order": [n + 1 for n in order],
        "steps": [
            {"passive": [n + 1 for n in step.passive], "gamma": step.gamma, "theta": step.theta}
            for step in steps
        ],
    }
    write_output(payload, args.out)
    return EXIT_OK


def metric_help() -> str:
    return "Selection metric: " + "; ".join(f"{name}: {METRIC_DESCRIPTIONS[name]}" for name in METRICS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Hybrid Relay Toolkit - SNR bounds and mode selection for active/passive relay networks"
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", type=str, help="Scenario JSON file (default: bundled canonical topology)")
    common.add_argument("--seed", type=int, help="Override the scenario seed")
    common.add_argument("--metric", choices=METRICS, default="max-snr", help=metric_help())
    common.add_argument(
        "--bound",
        choices=["direct", "relay", "auto"],
        default="auto",
        help="Bound used to score configurations (default: auto)",
    )
    common.add_argument("--out", "-o", type=str, help="Output file (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate a bound for a fixed mode assignment")
    p_eval.add_argument("--passive", type=str, help="Comma-separated 1-based passive relays (default: none)")
    p_eval.add_argument("--optimize-phases", action="store_true", help="Optimize passive phases before reporting")
    p_eval.set_defaults(handler=cmd_eval)

    p_select = sub.add_parser("select", parents=[common], help="Greedy relay mode selection")
    p_select.set_defaults(handler=cmd_select)

    p_brute = sub.add_parser("brute", parents=[common], help="Brute-force oracle over all mode assignments")
    p_brute.add_argument("--phase-resolution", type=int, help="Phase grid size (default: continuous)")
    p_brute.add_argument("--with-greedy", action="store_true", help="Also report the greedy max-snr gamma and its ratio to the oracle")
    p_brute.set_defaults(handler=cmd_brute)

    p_sweep = sub.add_parser("sweep", parents=[common], help="Parameter sweep to CSV")
    p_sweep.add_argument("--spec", type=str, help="Sweep JSON document")
    p_sweep.add_argument("--axis", choices=get_args(SweepAxis))
    p_sweep.add_argument("--values", type=float, nargs="+")
    p_sweep.add_argument("--metrics", choices=METRICS, nargs="+")
    p_sweep.add_argument("--seeds", type=int, nargs="+")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_gen = sub.add_parser("gen", parents=[common], help="Generate and print a channel realization")
    p_gen.set_defaults(handler=cmd_gen)

    p_profile = sub.add_parser("profile", parents=[common], help="Switch relays to passive in a fixed order")
    p_profile.add_argument("--order", type=str, help="Comma-separated 1-based switch order (default: 1..N)")
    p_profile.set_defaults(handler=cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.handler(args)
    except SolverError as e:
        print(f"Solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
