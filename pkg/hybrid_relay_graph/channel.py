"""Channel realizations, backscatter-enhanced channels and two-hop SNR expressions.

All channels are pre-divided by the square root of the total noise power, so
every SNR below assumes unit noise.
"""

import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field, replace
from types import MappingProxyType

import numpy as np

from hybrid_relay.schemas.models import PathLossModel, Scenario
from hybrid_relay_graph.errors import ContractError, DomainError


TWO_PI = 2.0 * math.pi
NORM_SLACK = 1e-9

# Multiplies link amplitudes; receives the generator and the array shape
FadingHook = Callable[[np.random.Generator, tuple[int, ...]], np.ndarray]


def path_loss_db(d: float, model: PathLossModel) -> float:
    """Attenuation in dB at distance d (meters)."""
    if not d > 0:
        raise DomainError(f"path loss needs a positive distance, got {d}")
    return model.l0_db + 10.0 * model.alpha * math.log10(d / model.d_ref_m)


def link_amplitude(scenario: Scenario, d: float) -> float:
    """Noise-normalized linear amplitude of a link of length d."""
    gain_db = scenario.antenna_gain_db - path_loss_db(d, scenario.pathloss)
    return 10.0 ** (gain_db / 20.0) / math.sqrt(scenario.noise_power_mw)


def rayleigh_fading(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Unit mean-square Rayleigh magnitudes."""
    return rng.rayleigh(scale=math.sqrt(0.5), size=shape)


@dataclass(frozen=True)
class ChannelSet:
    """
    One channel realization.

    Attributes:
        f0: HAP -> receiver, shape (K,)
        F: HAP -> relay n in row n, shape (N, K)
        g: relay n -> receiver, shape (N,)
        Z: relay n -> relay k, shape (N, N), symmetric with a zero diagonal
    """
    f0: np.ndarray
    F: np.ndarray
    g: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        k = self.f0.shape[0]
        n = self.g.shape[0]
        if self.F.shape != (n, k) or self.Z.shape != (n, n):
            raise ContractError(
                f"inconsistent channel shapes: f0 {self.f0.shape}, F {self.F.shape}, "
                f"g {self.g.shape}, Z {self.Z.shape}"
            )

    @property
    def num_antennas(self) -> int:
        return self.f0.shape[0]

    @property
    def num_relays(self) -> int:
        return self.g.shape[0]

    @classmethod
    def from_arrays(cls, f0, F, g, Z=None) -> "ChannelSet":
        """Build from array-likes; Z defaults to no relay-to-relay coupling."""
        f0 = np.atleast_1d(np.asarray(f0, dtype=complex))
        g = np.atleast_1d(np.asarray(g, dtype=complex))
        F = np.asarray(F, dtype=complex).reshape(g.shape[0], f0.shape[0])
        if Z is None:
            Z = np.zeros((g.shape[0], g.shape[0]), dtype=complex)
        Z = np.asarray(Z, dtype=complex)
        return cls(f0=f0, F=F, g=g, Z=Z)

    def with_forward_rotation(self, phase: float) -> "ChannelSet":
        """Copy with every relay-to-receiver channel g_n turned by e^{j phase}."""
        return replace(self, g=self.g * np.exp(1j * phase))

    def to_dict(self) -> dict:
        """JSON-friendly dump with real and imaginary parts split."""
        def split(a: np.ndarray) -> dict:
            return {"re": np.real(a).tolist(), "im": np.imag(a).tolist()}

        return {"f0": split(self.f0), "F": split(self.F), "g": split(self.g), "Z": split(self.Z)}


def generate_channels(scenario: Scenario, fading: FadingHook | None = None) -> ChannelSet:
    """
    Draw a channel realization for the scenario.

    Magnitudes follow path loss and antenna gain; phases are uniform on
    [0, 2pi) from a generator seeded by scenario.seed, drawn in the order
    f0, F, g, then the upper triangle of Z. The optional fading hook draws
    from the same generator after all phases.
    """
    rng = np.random.default_rng(scenario.seed)
    k, n = scenario.k, scenario.n
    hap = np.asarray(scenario.hap_xy, dtype=float)
    rx = np.asarray(scenario.rx_xy, dtype=float)
    relays = np.asarray(scenario.relays_xy, dtype=float)

    amp_f0 = link_amplitude(scenario, float(np.linalg.norm(rx - hap)))
    amp_f = np.array([link_amplitude(scenario, float(np.linalg.norm(r - hap))) for r in relays])
    amp_g = np.array([link_amplitude(scenario, float(np.linalg.norm(rx - r))) for r in relays])
    upper = np.triu_indices(n, k=1)
    amp_z = np.array([
        link_amplitude(scenario, float(np.linalg.norm(relays[i] - relays[j])))
        for i, j in zip(*upper)
    ])

    phase_f0 = rng.uniform(0.0, TWO_PI, size=k)
    phase_f = rng.uniform(0.0, TWO_PI, size=(n, k))
    phase_g = rng.uniform(0.0, TWO_PI, size=n)
    phase_z = rng.uniform(0.0, TWO_PI, size=upper[0].shape[0])

    f0 = amp_f0 * np.exp(1j * phase_f0)
    F = amp_f[:, None] * np.exp(1j * phase_f)
    g = amp_g * np.exp(1j * phase_g)
    z_upper = amp_z * np.exp(1j * phase_z)

    if fading is not None:
        f0 = f0 * fading(rng, f0.shape)
        F = F * fading(rng, F.shape)
        g = g * fading(rng, g.shape)
        z_upper = z_upper * fading(rng, z_upper.shape)

    Z = np.zeros((n, n), dtype=complex)
    Z[upper] = z_upper
    Z = Z + Z.T
    return ChannelSet(f0=f0, F=F, g=g, Z=Z)


@dataclass(frozen=True)
class ModeAssignment:
    """Per-relay radio mode: b[n] = 0 active (AF), 1 passive (backscatter)."""
    b: tuple[int, ...]

    def __post_init__(self):
        if any(flag not in (0, 1) for flag in self.b):
            raise ContractError(f"mode flags must be 0 or 1, got {self.b}")

    @classmethod
    def all_active(cls, n: int) -> "ModeAssignment":
        return cls(b=(0,) * n)

    @classmethod
    def from_passive(cls, n: int, passive: Iterable[int]) -> "ModeAssignment":
        passive = set(passive)
        if any(not 0 <= i < n for i in passive):
            raise ContractError(f"passive indices {sorted(passive)} out of range for {n} relays")
        return cls(b=tuple(1 if i in passive else 0 for i in range(n)))

    @property
    def num_relays(self) -> int:
        return len(self.b)

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(i for i, flag in enumerate(self.b) if flag == 0)

    @property
    def passive(self) -> tuple[int, ...]:
        return tuple(i for i, flag in enumerate(self.b) if flag == 1)

    def switch_to_passive(self, n: int) -> "ModeAssignment":
        if self.b[n] != 0:
            raise ContractError(f"relay {n} is already passive")
        flags = list(self.b)
        flags[n] = 1
        return ModeAssignment(b=tuple(flags))


@dataclass(frozen=True)
class Reflection:
    theta: float
    magnitude: float

    def __post_init__(self):
        if not 0.0 <= self.magnitude <= 1.0:
            raise ContractError(f"reflection magnitude must lie in [0, 1], got {self.magnitude}")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def coefficient(self) -> complex:
        return self.magnitude * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class ReflectionPlan:
    """Reflection coefficient of every passive relay, keyed by relay index."""
    entries: Mapping[int, Reflection] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @classmethod
    def uniform(cls, passive: Iterable[int], magnitude: float, theta: float = 0.0) -> "ReflectionPlan":
        return cls({n: Reflection(theta, magnitude) for n in passive})

    def with_phase(self, n: int, theta: float, magnitude: float | None = None) -> "ReflectionPlan":
        if magnitude is None:
            if n not in self.entries:
                raise ContractError(f"relay {n} has no reflection entry and no magnitude was given")
            magnitude = self.entries[n].magnitude
        entries = dict(self.entries)
        entries[n] = Reflection(theta, magnitude)
        return ReflectionPlan(entries)

    def coefficient(self, n: int) -> complex:
        if n not in self.entries:
            raise ContractError(f"passive relay {n} has no reflection entry")
        return self.entries[n].coefficient

    def phases(self) -> dict[int, float]:
        return {n: r.theta for n, r in sorted(self.entries.items())}


def _check_active(mode: ModeAssignment, k: int) -> None:
    if mode.b[k] != 0:
        raise ContractError(f"relay {k} is passive; enhanced relay channels exist only for active relays")


def enhance_direct(ch: ChannelSet, mode: ModeAssignment, refl: ReflectionPlan) -> np.ndarray:
    """f0 plus every passive relay's reflected path."""
    f0_hat = ch.f0.copy()
    for n in mode.passive:
        f0_hat = f0_hat + refl.coefficient(n) * ch.g[n] * ch.F[n]
    return f0_hat


def enhance_relay(ch: ChannelSet, mode: ModeAssignment, refl: ReflectionPlan, k: int) -> np.ndarray:
    """HAP -> active relay k, enhanced by reflections off the passive relays."""
    _check_active(mode, k)
    f_hat = ch.F[k].copy()
    for n in mode.passive:
        f_hat = f_hat + refl.coefficient(n) * ch.Z[n, k] * ch.F[n]
    return f_hat


def enhance_forward(ch: ChannelSet, mode: ModeAssignment, refl: ReflectionPlan, k: int) -> complex:
    """Active relay k -> receiver, enhanced through the passive relays."""
    _check_active(mode, k)
    g_hat = complex(ch.g[k])
    for n in mode.passive:
        g_hat += refl.coefficient(n) * ch.Z[n, k] * ch.g[n]
    return g_hat


@dataclass(frozen=True)
class EnhancedChannels:
    """
    Effective channels seen by the active relays for one mode and reflection plan.

    Row i of f_hat and entry i of g_hat belong to relay active[i].
    """
    f0_hat: np.ndarray
    f_hat: np.ndarray
    g_hat: np.ndarray
    active: tuple[int, ...]

    @property
    def num_antennas(self) -> int:
        return self.f0_hat.shape[0]

    @property
    def num_active(self) -> int:
        return len(self.active)


def enhance_channels(
    ch: ChannelSet,
    mode: ModeAssignment,
    refl: ReflectionPlan,
    enhance_forward_link: bool = True,
) -> EnhancedChannels:
    """Assemble all enhanced channels; enhance_forward_link=False keeps g_hat = g."""
    if mode.num_relays != ch.num_relays:
        raise ContractError(f"mode covers {mode.num_relays} relays, channels have {ch.num_relays}")
    active = mode.active
    k = ch.num_antennas
    f_hat = np.array([enhance_relay(ch, mode, refl, n) for n in active], dtype=complex).reshape(len(active), k)
    if enhance_forward_link:
        g_hat = np.array([enhance_forward(ch, mode, refl, n) for n in active], dtype=complex)
    else:
        g_hat = ch.g[list(active)].astype(complex)
    return EnhancedChannels(
        f0_hat=enhance_direct(ch, mode, refl),
        f_hat=f_hat,
        g_hat=g_hat,
        active=active,
    )


def _check_norm(w: np.ndarray, name: str) -> None:
    if np.linalg.norm(w) > 1.0 + NORM_SLACK:
        raise ContractError(f"{name} must have norm <= 1, got {np.linalg.norm(w):.12g}")


def snr_first_hop(f0_hat: np.ndarray, w1: np.ndarray, p_t: float) -> float:
    """p_t |f0_hat^H w1|^2."""
    _check_norm(w1, "w1")
    return float(p_t * abs(np.vdot(f0_hat, w1)) ** 2)


def snr_second_hop(
    x: np.ndarray,
    y: np.ndarray,
    g_hat: np.ndarray,
    f0_hat: np.ndarray,
    w2: np.ndarray,
    p_t: float,
) -> float:
    """|x^T D(g_hat) y + sqrt(p_t) f0_hat^H w2|^2 / (1 + ||D(g_hat) x||^2)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    g_hat = np.atleast_1d(np.asarray(g_hat, dtype=complex))
    if not x.shape == y.shape == g_hat.shape:
        raise ContractError(f"x, y and g_hat lengths differ: {x.shape}, {y.shape}, {g_hat.shape}")
    if f0_hat.shape != w2.shape:
        raise ContractError(f"f0_hat and w2 lengths differ: {f0_hat.shape}, {w2.shape}")
    if np.any(x < 0):
        raise ContractError("amplification coefficients must be nonnegative")
    _check_norm(w2, "w2")
    signal = np.sum(x * g_hat * y) + math.sqrt(p_t) * np.vdot(f0_hat, w2)
    noise = 1.0 + float(np.sum(np.abs(g_hat * x) ** 2))
    return float(abs(signal) ** 2 / noise)
