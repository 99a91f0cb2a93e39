"""Scenario documents: defaults, validation and error keys."""

import json

import pytest
from pydantic import ValidationError

from hybrid_relay.config.scenario import load_scenario, load_sweep_spec, parse_scenario
from hybrid_relay.schemas.models import Scenario
from hybrid_relay_graph.errors import ScenarioError


def minimal(**overrides) -> dict:
    data = {"pt_mw": 10.0, "rx_xy": [4.0, 0.0], "relays_xy": [[1.0, 1.0], [2.0, -1.0]]}
    data.update(overrides)
    return data


def test_canonical_topology_defaults(canonical):
    assert canonical.k == 3
    assert canonical.n == 5
    assert canonical.pt_mw == 50.0
    assert canonical.eta == 0.5
    assert canonical.gamma_max == 0.5
    assert canonical.pc_mw == 0.0
    assert canonical.hap_rx_distance == pytest.approx(4.0)


def test_defaults_and_relay_count_from_positions():
    scenario = parse_scenario(minimal())
    assert scenario.n == 2
    assert scenario.k == 3
    assert scenario.eta == 0.5
    assert scenario.pathloss.alpha == 2.0


def test_noise_power_is_density_times_bandwidth():
    scenario = parse_scenario(minimal(noise_density_dbm=-90.0, bandwidth_hz=1e5))
    assert scenario.noise_power_dbm == pytest.approx(-40.0)
    total = parse_scenario(minimal(noise_density_dbm=-90.0, noise_is_total=True))
    assert total.noise_power_dbm == pytest.approx(-90.0)


@pytest.mark.parametrize(
    "overrides, key",
    [
        ({"eta": 1.5}, "eta"),
        ({"gamma_max": 1.0}, "gamma_max"),
        ({"pt_mw": 0.0}, "pt_mw"),
        ({"colour": "blue"}, "colour"),
        ({"pathloss": {"alpha": -1.0}}, "pathloss.alpha"),
    ],
)
def test_schema_violation_names_the_key(overrides, key):
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(minimal(**overrides))
    assert excinfo.value.key == key
    assert str(excinfo.value).startswith(f"{key}:")


def test_relay_on_the_hap_is_rejected():
    with pytest.raises(ValidationError):
        Scenario(pt_mw=1.0, rx_xy=(4.0, 0.0), relays_xy=((0.0, 0.0),))


def test_mismatched_relay_count_is_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario(minimal(n=3))


def test_load_scenario_rejects_non_object(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(ScenarioError):
        load_scenario(path)


def test_load_sweep_spec(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"axis": "eta", "values": [0.5, 0.75], "metrics": ["max-snr"], "seeds": [1]}))
    spec = load_sweep_spec(path)
    assert spec.axis == "eta"
    assert spec.bound_kind == "auto"
    assert spec.scenario is None
