"""Passive-phase optimization, candidate metrics, oracle and power checks."""

from hybrid_relay_graph.modeselect.baseline import all_active_baseline, evaluate_configuration
from hybrid_relay_graph.modeselect.metrics import CandidateEvaluation, metric_score
from hybrid_relay_graph.modeselect.oracle import brute_force_select, cyclic_phase_search
from hybrid_relay_graph.modeselect.phase import PhaseOutcome, optimize_phase
from hybrid_relay_graph.modeselect.power import check_passive_power, passive_harvest
from hybrid_relay_graph.modeselect.profile import ProfileStep, profile_switch_order
from hybrid_relay_graph.modeselect.results import SelectionResult

__all__ = [
    "all_active_baseline",
    "evaluate_configuration",
    "CandidateEvaluation",
    "metric_score",
    "brute_force_select",
    "cyclic_phase_search",
    "PhaseOutcome",
    "optimize_phase",
    "check_passive_power",
    "passive_harvest",
    "ProfileStep",
    "profile_switch_order",
    "SelectionResult",
]
