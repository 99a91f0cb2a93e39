"""Channel generation, backscatter enhancement and two-hop SNR expressions."""

import math

import numpy as np
import pytest

from hybrid_relay.schemas.models import PathLossModel
from hybrid_relay_graph.channel import (
    ChannelSet,
    ModeAssignment,
    Reflection,
    ReflectionPlan,
    enhance_channels,
    enhance_direct,
    enhance_forward,
    enhance_relay,
    generate_channels,
    link_amplitude,
    path_loss_db,
    rayleigh_fading,
    snr_first_hop,
    snr_second_hop,
)
from hybrid_relay_graph.errors import ContractError, DomainError


@pytest.mark.parametrize("d, expected", [(1.0, 30.0), (10.0, 50.0), (100.0, 70.0)])
def test_path_loss_db(d, expected):
    assert path_loss_db(d, PathLossModel(l0_db=30.0, alpha=2.0, d_ref_m=1.0)) == pytest.approx(expected)


def test_path_loss_at_reference_distance_is_l0():
    model = PathLossModel(l0_db=37.5, alpha=3.1, d_ref_m=2.0)
    assert path_loss_db(2.0, model) == pytest.approx(37.5)


@pytest.mark.parametrize("d", [0.0, -1.0])
def test_path_loss_rejects_nonpositive_distance(d):
    with pytest.raises(DomainError):
        path_loss_db(d, PathLossModel())


def test_generate_channels_is_deterministic(small_scenario):
    a = generate_channels(small_scenario)
    b = generate_channels(small_scenario)
    for name in ("f0", "F", "g", "Z"):
        np.testing.assert_array_equal(getattr(a, name), getattr(b, name))


def test_generate_channels_depends_on_seed(small_scenario):
    other = small_scenario.model_copy(update={"seed": small_scenario.seed + 1})
    assert not np.allclose(generate_channels(small_scenario).f0, generate_channels(other).f0)


def test_channel_magnitudes_follow_path_loss(canonical):
    ch = generate_channels(canonical)
    assert ch.f0.shape == (3,)
    assert ch.F.shape == (5, 3)
    np.testing.assert_allclose(np.abs(ch.f0), link_amplitude(canonical, 4.0))
    relay = np.asarray(canonical.relays_xy[2])
    np.testing.assert_allclose(np.abs(ch.F[2]), link_amplitude(canonical, float(np.linalg.norm(relay))))
    np.testing.assert_allclose(ch.Z, ch.Z.T)
    np.testing.assert_array_equal(np.diag(ch.Z), 0.0)


def test_fading_hook_scales_magnitudes(small_scenario):
    faded = generate_channels(small_scenario, fading=rayleigh_fading)
    plain = generate_channels(small_scenario)
    np.testing.assert_allclose(np.angle(faded.f0), np.angle(plain.f0))
    assert not np.allclose(np.abs(faded.f0), np.abs(plain.f0))


def three_relay_channels() -> ChannelSet:
    rng = np.random.default_rng(11)
    f0 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    F = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    Z = np.triu(z, 1) + np.triu(z, 1).T
    return ChannelSet.from_arrays(f0, F, g, Z)


def test_no_passive_relay_leaves_channels_untouched():
    ch = three_relay_channels()
    enh = enhance_channels(ch, ModeAssignment.all_active(3), ReflectionPlan())
    np.testing.assert_array_equal(enh.f0_hat, ch.f0)
    np.testing.assert_array_equal(enh.f_hat, ch.F)
    np.testing.assert_array_equal(enh.g_hat, ch.g)


def test_zero_magnitude_reflection_is_neutral():
    ch = three_relay_channels()
    mode = ModeAssignment.from_passive(3, [1])
    refl = ReflectionPlan.uniform([1], magnitude=0.0, theta=1.3)
    np.testing.assert_array_equal(enhance_direct(ch, mode, refl), ch.f0)
    np.testing.assert_array_equal(enhance_relay(ch, mode, refl, 0), ch.F[0])
    assert enhance_forward(ch, mode, refl, 2) == ch.g[2]


def test_enhanced_channels_match_the_reflection_sums():
    ch = three_relay_channels()
    mode = ModeAssignment.from_passive(3, [0, 2])
    refl = ReflectionPlan({0: Reflection(0.4, 0.5), 2: Reflection(2.2, 0.3)})
    c0 = 0.5 * np.exp(0.4j)
    c2 = 0.3 * np.exp(2.2j)
    np.testing.assert_allclose(enhance_direct(ch, mode, refl), ch.f0 + c0 * ch.g[0] * ch.F[0] + c2 * ch.g[2] * ch.F[2])
    np.testing.assert_allclose(
        enhance_relay(ch, mode, refl, 1), ch.F[1] + c0 * ch.Z[0, 1] * ch.F[0] + c2 * ch.Z[2, 1] * ch.F[2]
    )
    np.testing.assert_allclose(
        enhance_forward(ch, mode, refl, 1), ch.g[1] + c0 * ch.Z[0, 1] * ch.g[0] + c2 * ch.Z[2, 1] * ch.g[2]
    )
    enh = enhance_channels(ch, mode, refl, enhance_forward_link=False)
    assert enh.active == (1,)
    np.testing.assert_array_equal(enh.g_hat, ch.g[[1]])


def test_enhancement_is_periodic_in_theta():
    ch = three_relay_channels()
    mode = ModeAssignment.from_passive(3, [1])
    a = enhance_direct(ch, mode, ReflectionPlan.uniform([1], 0.5, theta=0.7))
    b = enhance_direct(ch, mode, ReflectionPlan.uniform([1], 0.5, theta=0.7 + 2.0 * math.pi))
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_passive_relay_has_no_enhanced_relay_channel():
    ch = three_relay_channels()
    mode = ModeAssignment.from_passive(3, [1])
    refl = ReflectionPlan.uniform([1], 0.5)
    with pytest.raises(ContractError):
        enhance_relay(ch, mode, refl, 1)
    with pytest.raises(ContractError):
        enhance_forward(ch, mode, refl, 1)


def test_missing_reflection_entry_is_a_contract_error():
    ch = three_relay_channels()
    with pytest.raises(ContractError):
        enhance_direct(ch, ModeAssignment.from_passive(3, [2]), ReflectionPlan())


def test_reflection_phase_wraps_into_one_turn():
    plan = ReflectionPlan().with_phase(0, 2.0 * math.pi + 0.25, magnitude=0.5)
    assert plan.entries[0].theta == pytest.approx(0.25)
    assert plan.with_phase(0, -0.25).entries[0].theta == pytest.approx(2.0 * math.pi - 0.25)


def test_mode_assignment_switching():
    mode = ModeAssignment.all_active(4).switch_to_passive(2)
    assert mode.active == (0, 1, 3)
    assert mode.passive == (2,)
    with pytest.raises(ContractError):
        mode.switch_to_passive(2)


def test_first_hop_snr_is_linear_in_power():
    f0 = np.array([1.0 + 1.0j, 2.0])
    w1 = np.array([1.0, 0.0])
    assert snr_first_hop(f0, w1, 2.0) == pytest.approx(2.0 * snr_first_hop(f0, w1, 1.0))
    assert snr_first_hop(f0, w1, 1.0) == pytest.approx(2.0)


def test_first_hop_rejects_long_beamformer():
    with pytest.raises(ContractError):
        snr_first_hop(np.ones(2), np.array([1.0, 0.1]), 1.0)


def test_second_hop_snr_value():
    value = snr_second_hop(np.array([1.0]), np.array([1.0]), np.array([1.0]), np.zeros(1), np.array([1.0]), 1.0)
    assert value == pytest.approx(0.5)


def test_second_hop_invariant_under_rotation_of_w2_alone_without_relays():
    f0 = np.array([1.0 - 0.5j, 0.3j])
    w2 = f0 / np.linalg.norm(f0)
    base = snr_second_hop(np.zeros(1), np.ones(1), np.ones(1), f0, w2, 3.0)
    rotated = snr_second_hop(np.zeros(1), np.ones(1), np.ones(1), f0, w2 * np.exp(0.9j), 3.0)
    assert rotated == pytest.approx(base)
    assert base == pytest.approx(3.0 * np.linalg.norm(f0) ** 2)


def test_second_hop_rejects_mismatched_lengths():
    with pytest.raises(ContractError):
        snr_second_hop(np.ones(2), np.ones(1), np.ones(2), np.ones(2), np.array([1.0, 0.0]), 1.0)
