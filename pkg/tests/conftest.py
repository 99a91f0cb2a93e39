"""Shared fixtures: the bundled topology, a small two-relay scenario and helpers."""

import numpy as np
import pytest

from hybrid_relay.config.scenario import load_scenario
from hybrid_relay.schemas.models import Scenario
from hybrid_relay_graph.channel import EnhancedChannels, generate_channels


@pytest.fixture
def canonical():
    return load_scenario()


@pytest.fixture
def small_scenario():
    return Scenario(
        k=2,
        pt_mw=50.0,
        rx_xy=(4.0, 0.0),
        relays_xy=((1.5, 0.6), (2.5, -0.5)),
        seed=7,
    )


@pytest.fixture
def small_channels(small_scenario):
    return generate_channels(small_scenario)


def random_enhanced(rng: np.random.Generator, k: int, na: int, scale: float = 3.0) -> EnhancedChannels:
    """Random complex channels at a moderate SNR scale."""
    def cn(*shape):
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)

    return EnhancedChannels(
        f0_hat=cn(k),
        f_hat=cn(na, k).reshape(na, k),
        g_hat=cn(na),
        active=tuple(range(na)),
    )
