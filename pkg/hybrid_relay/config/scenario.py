"""Scenario and sweep document loading."""

import json
import logging
from importlib import resources
from pathlib import Path

from pydantic import ValidationError

from hybrid_relay.schemas.models import Scenario, SweepSpec
from hybrid_relay_graph.errors import ScenarioError


logger = logging.getLogger(__name__)


def canonical_scenario_path() -> Path:
    """Path of the bundled five-relay topology."""
    return Path(str(resources.files("hybrid_relay") / "scenarios" / "canonical.json"))


def parse_scenario(data: dict) -> Scenario:
    """
    Validate a decoded scenario document.

    Raises:
        ScenarioError: naming the first offending key and the violated constraint
    """
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or "scenario"
        raise ScenarioError(key, first["msg"]) from e


def load_scenario(path: str | Path | None = None) -> Scenario:
    """
    Load a scenario JSON document.

    Args:
        path: Document path; None loads the bundled canonical topology

    Returns:
        Validated Scenario with documented defaults applied
    """
    path = Path(path) if path is not None else canonical_scenario_path()
    scenario = parse_scenario(_read_object(path, "scenario"))
    logger.debug(f"Loaded scenario {path}: K={scenario.k}, N={scenario.n}, p_t={scenario.pt_mw} mW")
    return scenario


def _read_object(path: Path, what: str) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ScenarioError(what, f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ScenarioError(what, f"{path} must contain a JSON object")
    return data


def load_sweep_spec(path: str | Path) -> SweepSpec:
    """Load a sweep document (axis, values, metrics, bound_kind, seeds, scenario)."""
    data = _read_object(Path(path), "sweep")
    try:
        return SweepSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ScenarioError(".".join(str(part) for part in first["loc"]) or "sweep", first["msg"]) from e
