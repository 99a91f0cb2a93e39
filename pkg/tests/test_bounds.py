"""SNR bounds: direct-link SDP, direct-link-free alternating solver, single-antenna variant."""

import itertools

import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import random_enhanced
from hybrid_relay.config.settings import SolverConfig
from hybrid_relay_graph.bounds import (
    PowerSplitState,
    closed_form_snr,
    eval_bound_direct,
    eval_bound_relay,
    eval_bound_single_antenna,
    evaluate_bound,
    inner_beamforming,
    ps_step,
    relay_terms,
    x_bar,
)
from hybrid_relay_graph.channel import EnhancedChannels, ModeAssignment, ReflectionPlan, enhance_channels, generate_channels
from hybrid_relay_graph.conic import min_gain
from hybrid_relay_graph.errors import ContractError, DomainError


def enhanced(f0, f, g) -> EnhancedChannels:
    f = np.asarray(f, dtype=complex)
    return EnhancedChannels(
        f0_hat=np.asarray(f0, dtype=complex),
        f_hat=f.reshape(len(g), -1) if len(g) else f.reshape(0, len(f0)),
        g_hat=np.asarray(g, dtype=complex),
        active=tuple(range(len(g))),
    )


def single_relay_value(rho, s2, g2, p_t, eta):
    xb = x_bar(rho, s2, g2, p_t, eta)
    yb = (1.0 - rho) * p_t * s2
    return xb * yb / (1.0 + xb)


# closed form

def test_closed_form_example():
    one = np.ones(1, dtype=complex)
    assert closed_form_snr(0.5, one, one, one, 1.0, 0.5) == pytest.approx(1.5)


@pytest.mark.parametrize("rho", [1.0, 1.5])
def test_closed_form_rejects_rho_at_or_above_one(rho):
    one = np.ones(1, dtype=complex)
    with pytest.raises(DomainError):
        closed_form_snr(rho, one, one, one, 1.0, 0.5)


# inner network beamforming

def test_inner_beamforming_single_relay():
    x_hat, y, value = inner_beamforming(np.array([4.0]), np.array([1.0]))
    assert value == pytest.approx(0.8)
    np.testing.assert_allclose(x_hat, [2.0])
    np.testing.assert_allclose(y, [1.0])


def test_inner_beamforming_zero_amplitudes():
    x_hat, _, value = inner_beamforming(np.array([2.0, 3.0]), np.zeros(2))
    assert value == 0.0
    np.testing.assert_array_equal(x_hat, np.zeros(2))


def test_inner_beamforming_rejects_mismatched_lengths():
    with pytest.raises(ContractError):
        inner_beamforming(np.ones(2), np.ones(3))


def test_inner_beamforming_matches_grid_search_for_two_relays():
    rng = np.random.default_rng(11)
    for _ in range(5):
        xb = rng.uniform(0.1, 5.0, 2)
        yb = rng.uniform(0.1, 5.0, 2)
        _, _, value = inner_beamforming(xb, yb)

        y = np.sqrt(yb)
        a = np.linspace(0.0, np.sqrt(xb[0]), 200)
        b = np.linspace(0.0, np.sqrt(xb[1]), 200)
        xa, xb_ = np.meshgrid(a, b)
        grid = (xa * y[0] + xb_ * y[1]) ** 2 / (1.0 + xa ** 2 + xb_ ** 2)
        best = float(grid.max())
        assert value >= best * (1.0 - 1e-9)
        assert value == pytest.approx(best, rel=1e-2)


def test_inner_beamforming_matches_grid_search_for_three_relays():
    rng = np.random.default_rng(12)
    xb = rng.uniform(0.1, 3.0, 3)
    yb = rng.uniform(0.1, 3.0, 3)
    _, _, value = inner_beamforming(xb, yb)

    y = np.sqrt(yb)
    axes = [np.linspace(0.0, np.sqrt(u), 40) for u in xb]
    best = max(
        float(np.dot(x, y) ** 2 / (1.0 + np.dot(x, x)))
        for x in map(np.array, itertools.product(*axes))
    )
    assert value >= best * (1.0 - 1e-9)
    assert value == pytest.approx(best, rel=1e-2)


# power-split step

def test_ps_step_solves_amplification_target_exactly():
    p_t, eta, beta = 1.0, 0.5, 0.5
    state = PowerSplitState.build([0.5], 1.0, np.array([1.0]), p_t, eta, beta)
    x_hat = np.array([0.2])
    gap = state.x_bar[0] - 0.04
    target = state.x_bar[0] - beta * gap

    rho = ps_step(state, p_t, eta, np.array([1.0]), x_hat)
    expected = brentq(lambda r: x_bar(r, 1.0, 1.0, p_t, eta) - target, 1e-9, 0.5)
    assert rho[0] == pytest.approx(expected, rel=1e-9)
    assert x_bar(rho[0], 1.0, 1.0, p_t, eta) == pytest.approx(target, rel=1e-9)
    assert 0.0 < rho[0] <= 0.5


def test_ps_step_signals_convergence_without_gaps():
    state = PowerSplitState.build([0.5, 0.3], 2.0, np.array([1.0, 0.5]), 1.0, 0.5, 0.5)
    assert ps_step(state, 1.0, 0.5, np.array([1.0, 0.5]), np.sqrt(state.x_bar)) is None


def test_ps_step_breaks_ties_by_lowest_index():
    g = np.array([1.0, 1.0])
    state = PowerSplitState.build([0.5, 0.5], 1.0, g, 1.0, 0.5, 0.5)
    rho = ps_step(state, 1.0, 0.5, g, np.array([0.2, 0.2]))
    assert rho[0] < 0.5
    assert rho[1] == 0.5


# direct-link-free bound

def test_relay_bound_needs_an_active_relay():
    enh = enhanced([1.0, 0.5], [], [])
    with pytest.raises(ContractError):
        eval_bound_relay(enh, 1.0, 0.5)


def test_relay_bound_flags_zero_min_gain():
    enh = enhanced([1.0, 0.0], [[1.0, 0.0], [0.0, 0.0]], [1.0, 1.0])
    result = eval_bound_relay(enh, 1.0, 0.5)
    assert result.gamma == 0.0
    assert "s_min-zero" in result.diagnostics


def test_relay_bound_invariants():
    rng = np.random.default_rng(31)
    enh = random_enhanced(rng, 2, 3)
    p_t, eta = 1.0, 0.5
    result = eval_bound_relay(enh, p_t, eta)
    op = result.op

    assert result.kind == "relay"
    assert result.gamma1 == 0.0
    assert result.gamma == pytest.approx(result.gamma2)
    assert result.gamma > 0.0
    assert result.converged

    s2 = min_gain(enh.f_hat, op.w1)
    np.testing.assert_allclose(op.y ** 2, (1.0 - op.rho) * p_t * s2, rtol=1e-9)

    trace = np.array(result.trace)
    assert np.all(np.diff(trace) >= -1e-9 * max(1.0, trace.max()))
    assert trace[-1] == pytest.approx(result.gamma)

    scale = max(1.0, float(np.max(op.p)))
    assert np.all(op.power_budget_slack(enh, p_t, eta) >= -1e-9 * scale)
    assert np.all((op.rho > 0.0) & (op.rho < 1.0))


@pytest.mark.slow
def test_relay_bound_amplitudes_are_tight_over_seeded_instances():
    p_t, eta = 1.0, 0.5
    worst = 0.0
    for seed in range(100):
        enh = random_enhanced(np.random.default_rng(seed), 2, 1 + seed % 3)
        result = eval_bound_relay(enh, p_t, eta)
        if "s_min-zero" in result.diagnostics:
            continue
        s2 = min_gain(enh.f_hat, result.op.w1)
        y_bar = (1.0 - result.op.rho) * p_t * s2
        worst = max(worst, float(np.max(np.abs(result.op.y ** 2 - y_bar))))
    assert worst <= 1e-6


def test_rho_refinement_rounds_are_configurable(monkeypatch):
    enh = random_enhanced(np.random.default_rng(31), 2, 3)
    plain = eval_bound_relay(enh, 1.0, 0.5, refine=False)
    monkeypatch.setattr(SolverConfig, "RHO_REFINE_MAX_ROUNDS", 0)
    capped = eval_bound_relay(enh, 1.0, 0.5, refine=True)
    assert capped.gamma == plain.gamma
    assert capped.trace == plain.trace


def test_single_antenna_bound_matches_rho_grid():
    f, g, p_t, eta = 1.3, 0.9, 2.0, 0.6
    enh = enhanced([0.4], [[f]], [g])
    result = eval_bound_single_antenna(enh, p_t, eta)

    rho = np.linspace(1e-6, 1.0 - 1e-6, 20001)
    best = float(np.max(single_relay_value(rho, f ** 2, g ** 2, p_t, eta)))
    assert result.kind == "single-antenna"
    assert result.gamma >= best * (1.0 - 1e-3)
    assert result.gamma == pytest.approx(best, rel=1e-2)


def test_single_antenna_bound_requires_one_antenna():
    enh = random_enhanced(np.random.default_rng(1), 2, 1)
    with pytest.raises(ContractError):
        eval_bound_single_antenna(enh, 1.0, 0.5)


def test_single_antenna_and_relay_bounds_agree_for_one_relay():
    enh = enhanced([0.3 + 0.1j], [[1.1 - 0.4j]], [0.8j])
    relay = eval_bound_relay(enh, 1.5, 0.5)
    single = eval_bound_single_antenna(enh, 1.5, 0.5)
    assert relay.gamma == pytest.approx(single.gamma, rel=1e-6)


# direct-link bound

def test_direct_bound_matches_relaxation_for_single_antenna():
    enh = enhanced([1.0 + 0.5j], [[0.8], [1.2j]], [0.7, 1.1])
    result = eval_bound_direct(enh, 10.0, 0.5)
    assert "randomized-beam" not in result.diagnostics
    assert result.gamma == pytest.approx(result.relaxation_value, rel=1e-4)
    assert result.gamma == pytest.approx(result.gamma1 + result.gamma2)


def test_direct_bound_is_feasible_and_below_relaxation():
    rng = np.random.default_rng(44)
    p_t, eta = 1.0, 0.5
    enh = random_enhanced(rng, 2, 2)
    result = eval_bound_direct(enh, p_t, eta)
    op = result.op

    assert result.kind == "direct"
    assert result.gamma <= result.relaxation_value * (1.0 + 1e-5) + 1e-6
    assert np.linalg.norm(op.w1) == pytest.approx(1.0)
    assert np.linalg.norm(op.w2) == pytest.approx(1.0)
    scale = max(1.0, float(np.max(op.p)))
    assert np.all(op.power_budget_slack(enh, p_t, eta) >= -1e-9 * scale)
    np.testing.assert_allclose(op.x, np.sqrt(op.p / (1.0 + op.y ** 2)))


@pytest.mark.parametrize("na", [1, 2, 3, 4])
def test_direct_bound_reproduces_relaxation_with_more_relays_than_antennas(na):
    p_t, eta = 1.0, 0.5
    for seed in (0, 1, 2, 3, 17):
        result = eval_bound_direct(random_enhanced(np.random.default_rng(seed), 3, na), p_t, eta)
        assert result.gamma <= result.relaxation_value * (1.0 + 1e-5) + 1e-6
        if not {"randomized-beam", "common-split"} & set(result.diagnostics):
            assert result.gamma == pytest.approx(result.relaxation_value, rel=1e-4)


@pytest.mark.slow
def test_direct_bound_identity_over_seeded_instances():
    p_t, eta = 1.0, 0.5
    checked = 0
    for seed in range(100):
        na = 1 + seed % 4
        result = eval_bound_direct(random_enhanced(np.random.default_rng(seed), 3, na), p_t, eta)
        assert result.gamma <= result.relaxation_value * (1.0 + 1e-5) + 1e-6
        if not {"randomized-beam", "common-split"} & set(result.diagnostics):
            assert result.gamma == pytest.approx(result.relaxation_value, rel=1e-4)
            checked += 1
    assert checked > 0


def test_direct_bound_relays_sit_on_the_tight_split():
    rng = np.random.default_rng(3)
    p_t, eta = 1.0, 0.5
    enh = random_enhanced(rng, 3, 4)
    result = eval_bound_direct(enh, p_t, eta)
    forwarding = result.op.p > 0
    terms = relay_terms(result.op.rho[forwarding], enh.g_hat[forwarding], enh.f0_hat, p_t, eta)
    assert np.all(terms >= -1e-9)
    assert result.gamma == pytest.approx(result.gamma1 + result.gamma2)


def test_direct_bound_without_active_relays():
    f0 = np.array([1.0 + 1.0j, 0.5])
    result = eval_bound_direct(enhanced(f0, [], []), 2.0, 0.5)
    assert result.gamma == pytest.approx(2.0 * 2.0 * np.linalg.norm(f0) ** 2, rel=1e-6)


def test_direct_bound_with_zero_direct_link():
    enh = enhanced([0.0, 0.0], [[1.0, 0.0]], [1.0])
    result = eval_bound_direct(enh, 1.0, 0.5)
    assert result.gamma == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_array_equal(result.op.w2, np.array([1.0, 0.0]))
    assert "silent-relay" in result.diagnostics


# dispatch

def test_evaluate_bound_without_active_relays_scores_zero():
    enh = enhanced([1.0, 0.5], [], [])
    result = evaluate_bound(enh, "relay", 1.0, 0.5)
    assert result.gamma == 0.0
    assert result.diagnostics == ("no-active-relays",)


def test_evaluate_bound_rejects_unknown_kind():
    enh = random_enhanced(np.random.default_rng(2), 1, 1)
    with pytest.raises(ContractError):
        evaluate_bound(enh, "mystery", 1.0, 0.5)


@pytest.mark.parametrize("kind", ["relay", "direct"])
def test_bounds_on_canonical_all_active_channels(canonical, kind):
    ch = generate_channels(canonical)
    enh = enhance_channels(ch, ModeAssignment.all_active(canonical.n), ReflectionPlan())
    result = evaluate_bound(enh, kind, canonical.pt_mw, canonical.eta)
    assert np.isfinite(result.gamma)
    assert result.gamma > 0.0
    if kind == "direct":
        assert result.gamma <= result.relaxation_value * (1.0 + 1e-5) + 1e-6
