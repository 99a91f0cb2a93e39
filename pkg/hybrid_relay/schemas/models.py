"""Pydantic models for scenario documents, sweep specs and report rows."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


Metric = Literal["max-snr", "max-dr", "max-rr", "max-dg", "min-rf"]
BoundKind = Literal["direct", "relay", "single-antenna"]
BoundChoice = Literal["direct", "relay", "auto"]
SweepAxis = Literal["p_t", "alpha", "eta", "gamma_max", "d0", "g_phase"]

Point = tuple[float, float]


class PathLossModel(BaseModel):
    """Log-distance path loss: l0_db + 10 alpha log10(d / d_ref_m)."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    l0_db: float = 30.0
    alpha: float = Field(2.0, gt=0)
    d_ref_m: float = Field(1.0, gt=0)


class Scenario(BaseModel):
    """Network geometry and radio parameters of one hybrid relay deployment."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    k: int = Field(3, ge=1)  # HAP antennas
    n: int = Field(ge=1)     # relays, defaults to len(relays_xy)
    pt_mw: float = Field(gt=0)
    eta: float = Field(0.5, gt=0, le=1)
    gamma_max: float = Field(0.5, gt=0, lt=1)
    pc_mw: float = Field(0.0, ge=0)
    noise_density_dbm: float = -90.0
    noise_is_total: bool = False  # treat noise_density_dbm as total noise power
    bandwidth_hz: float = Field(1e5, gt=0)
    antenna_gain_db: float = 15.0
    pathloss: PathLossModel = Field(default_factory=PathLossModel)
    hap_xy: Point = (0.0, 0.0)
    rx_xy: Point
    relays_xy: tuple[Point, ...] = Field(min_length=1)
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode='before')
    @classmethod
    def default_relay_count(cls, data):
        """Fill n from the relay list when omitted."""
        if isinstance(data, dict) and data.get("n") is None and data.get("relays_xy") is not None:
            data = {**data, "n": len(data["relays_xy"])}
        return data

    @model_validator(mode='after')
    def check_geometry(self):
        if self.n != len(self.relays_xy):
            raise ValueError(f"n={self.n} does not match {len(self.relays_xy)} relay positions")
        if self.hap_rx_distance <= 0:
            raise ValueError("HAP and receiver must not coincide")
        for index, relay in enumerate(self.relays_xy, start=1):
            if relay == tuple(self.hap_xy) or relay == tuple(self.rx_xy):
                raise ValueError(f"relay {index} coincides with the HAP or the receiver")
        if len(set(self.relays_xy)) != len(self.relays_xy):
            raise ValueError("relay positions must be pairwise distinct")
        return self

    @property
    def hap_rx_distance(self) -> float:
        return math.dist(self.hap_xy, self.rx_xy)

    @property
    def noise_power_dbm(self) -> float:
        """Total noise power; the density is per Hz unless noise_is_total."""
        if self.noise_is_total:
            return self.noise_density_dbm
        return self.noise_density_dbm + 10.0 * math.log10(self.bandwidth_hz)

    @property
    def noise_power_mw(self) -> float:
        return 10.0 ** (self.noise_power_dbm / 10.0)


class SweepSpec(BaseModel):
    """One experiment sweep: an axis, its values, and what to run per value."""
    model_config = ConfigDict(extra='forbid')

    axis: SweepAxis
    values: list[float] = Field(min_length=1)
    metrics: list[Metric] = Field(min_length=1)
    bound_kind: BoundChoice = "auto"
    seeds: list[int] = Field(min_length=1)
    scenario: str | None = None  # path; None selects the bundled canonical topology


class SweepRow(BaseModel):
    """One CSV row of a sweep."""
    model_config = ConfigDict(extra='forbid')

    seed: int
    axis: str
    axis_value: float
    metric: str
    bound: str
    gamma: float
    throughput_bps_hz: float
    throughput_bps: float
    n_passive: int
    passive_set: str
    iterations: int
    status: str


CSV_COLUMNS = list(SweepRow.model_fields.keys())
