"""Greedy selection graph: nodes, routing and end-to-end runs."""

from dataclasses import replace

import numpy as np
import pytest

from hybrid_relay.schemas.models import Scenario
from hybrid_relay_graph import create_selection_graph, select_modes
from hybrid_relay_graph.agent import should_continue
from hybrid_relay_graph.bounds import empty_bound
from hybrid_relay_graph.channel import ChannelSet, ModeAssignment, ReflectionPlan, enhance_channels
from hybrid_relay_graph.errors import ContractError
from hybrid_relay_graph.modeselect.metrics import CandidateEvaluation
from hybrid_relay_graph.nodes.score import pick_best
from hybrid_relay_graph.nodes.switch import evaluate_switch_node


def zero_bound(ch: ChannelSet, mode: ModeAssignment, gamma: float):
    enh = enhance_channels(ch, mode, ReflectionPlan.uniform(mode.passive, 0.5))
    bound = empty_bound(enh, "relay", 1.0, "test")
    return replace(bound, gamma=gamma, gamma2=gamma)


@pytest.fixture
def two_relay_channels():
    return ChannelSet.from_arrays([1.0, 0.5j], [[1.0, 0.0], [0.0, 1.0]], [0.5, 0.7])


def test_graph_nodes():
    graph = create_selection_graph()
    assert set(graph.nodes) == {"initialize", "score_candidates", "evaluate_switch", "finalize"}


def test_should_continue():
    assert should_continue({"done": True, "mode": ModeAssignment.all_active(2)}) == "done"
    assert should_continue({"done": False, "mode": ModeAssignment.all_active(2)}) == "continue"
    assert should_continue({"done": False, "mode": ModeAssignment((1, 1))}) == "done"


def test_pick_best_prefers_lowest_index_on_ties():
    refl = ReflectionPlan()
    evaluations = [CandidateEvaluation(n, score, 0.0, refl) for n, score in [(0, 1.0), (1, 3.0), (2, 3.0)]]
    assert pick_best(evaluations).candidate == 1


def test_pick_best_with_negated_scores():
    refl = ReflectionPlan()
    evaluations = [CandidateEvaluation(n, -(n + 1.0), 0.0, refl) for n in range(3)]
    assert pick_best(evaluations).candidate == 0


def test_switch_accepts_improvement(two_relay_channels):
    mode = ModeAssignment.all_active(2)
    current = zero_bound(two_relay_channels, mode, 1.0)
    switched = mode.switch_to_passive(1)
    proposal = CandidateEvaluation(
        1, 2.0, 0.3, ReflectionPlan.uniform([1], 0.5, 0.3), zero_bound(two_relay_channels, switched, 2.0)
    )
    update = evaluate_switch_node({"mode": mode, "bound": current, "proposal": proposal})
    assert update["mode"] == switched
    assert update["per_iteration"] == [(1, 2.0)]
    assert update["done"] is False


def test_switch_rejects_gain_within_epsilon(two_relay_channels):
    mode = ModeAssignment.all_active(2)
    current = zero_bound(two_relay_channels, mode, 1.0)
    proposal = CandidateEvaluation(
        0, 1.0, 0.0, ReflectionPlan.uniform([0], 0.5),
        zero_bound(two_relay_channels, mode.switch_to_passive(0), 1.0 + 1e-6),
    )
    assert evaluate_switch_node({"mode": mode, "bound": current, "proposal": proposal}) == {"done": True}


def test_switch_stops_without_proposal(two_relay_channels):
    mode = ModeAssignment.all_active(2)
    current = zero_bound(two_relay_channels, mode, 1.0)
    assert evaluate_switch_node({"mode": mode, "bound": current, "proposal": None}) == {"done": True}


def test_select_modes_rejects_unknown_metric(small_scenario, small_channels):
    with pytest.raises(ContractError):
        select_modes(small_scenario, small_channels, "max-fun")


def test_select_modes_rejects_mismatched_channels(small_scenario):
    ch = ChannelSet.from_arrays(np.ones(2), np.ones((3, 2)), np.ones(3))
    with pytest.raises(ContractError):
        select_modes(small_scenario, ch)


def test_useless_reflector_stays_active():
    scenario = Scenario(k=1, pt_mw=10.0, rx_xy=(4.0, 0.0), relays_xy=((2.0, 0.5),))
    ch = ChannelSet.from_arrays([1.0], [[2.0]], [0.0])
    result = select_modes(scenario, ch, "max-snr", "direct")
    assert result.passive_set == ()
    assert result.per_iteration == ()
    assert result.gamma == pytest.approx(result.baseline_gamma)


@pytest.mark.parametrize("metric", ["max-snr", "max-dr", "max-rr", "max-dg", "min-rf"])
def test_small_network_selection(small_scenario, small_channels, metric):
    result = select_modes(small_scenario, small_channels, metric, "direct")
    gammas = [gamma for _, gamma in result.per_iteration]
    assert all(b > a for a, b in zip(gammas, gammas[1:]))
    assert result.gamma >= result.baseline_gamma
    assert result.metric == metric
    assert result.bound_kind == "direct"
    assert len(result.passive_set) == len(result.per_iteration)
    if gammas:
        assert result.gamma == pytest.approx(gammas[-1])


@pytest.mark.slow
def test_canonical_max_snr_selection(canonical):
    from hybrid_relay_graph.channel import generate_channels

    ch = generate_channels(canonical)
    result = select_modes(canonical, ch, "max-snr", "auto")
    gammas = [result.baseline_gamma] + [gamma for _, gamma in result.per_iteration]
    assert all(b > a for a, b in zip(gammas, gammas[1:]))
    assert result.gamma >= result.baseline_gamma
    assert result.bound_kind in ("direct", "relay")
    summary = result.summary()
    assert summary["passive_set"] == result.passive_label
    assert summary["iterations"] == result.iterations
