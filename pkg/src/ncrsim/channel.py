"""Stochastic multipath link generation.

Each link is a discrete list of (attenuation, delay) path components.
Repeater links are Rician LOS clusters, the direct BS-UE link is a Rayleigh
NLOS cluster; total path power is normalized to the log-distance pathloss.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .geometry import Position3D, Scenario, link_distance


@dataclass
class MultipathConfig:
    """Knobs of the stand-in cluster channel model."""

    los_exponent: float = 2.4
    # repeater-to-BS hop exponent; None falls back to los_exponent
    bs_los_exponent: float | None = 1.4
    nlos_exponent: float = 3.6
    rician_k_db: float = 10.0
    n_los_paths: int = 6
    n_nlos_paths: int = 10
    los_excess_delay_mean_s: float = 100e-9
    nlos_excess_delay_mean_s: float = 300e-9
    # per-index decay rate of the reflected-path power fractions (LOS links)
    reflected_power_decay: float = 1.0


DEFAULT_MULTIPATH = MultipathConfig()


@dataclass(frozen=True)
class PathComponent:
    attenuation: float  # amplitude, in [0, 1]
    delay: float  # seconds

    def __post_init__(self):
        if not 0.0 <= self.attenuation <= 1.0:
            raise ValueError("attenuation must be in [0, 1]")
        if self.delay < 0:
            raise ValueError("delay must be non-negative")


@dataclass
class LinkProfile:
    paths: list[PathComponent]
    is_los: bool

    def __post_init__(self):
        if not self.paths:
            raise ValueError("a link must contain at least one path")

    @property
    def attenuations(self) -> np.ndarray:
        return np.array([p.attenuation for p in self.paths])

    @property
    def delays(self) -> np.ndarray:
        return np.array([p.delay for p in self.paths])

    @property
    def total_gain(self) -> float:
        return float(np.sum(self.attenuations**2))


@dataclass
class ChannelRealization:
    """Direct NLOS profile plus per-repeater LOS profile pairs."""

    direct: LinkProfile
    ue_to_rep: list[LinkProfile] = field(default_factory=list)
    rep_to_bs: list[LinkProfile] = field(default_factory=list)

    def __post_init__(self):
        if len(self.ue_to_rep) != len(self.rep_to_bs):
            raise ValueError("repeater link lists must have matching length")

    @property
    def num_repeaters(self) -> int:
        return len(self.ue_to_rep)


def pathloss(
    distance_m: float,
    is_los: bool,
    carrier_frequency_hz: float,
    config: MultipathConfig = DEFAULT_MULTIPATH,
) -> float:
    """Log-distance linear power gain: Friis at 1 m times (d/1m)^-n."""
    if distance_m < 1.0:
        raise ValueError("pathloss model requires distance >= 1 m")
    wavelength = SPEED_OF_LIGHT / carrier_frequency_hz
    beta0 = (wavelength / (4.0 * np.pi)) ** 2
    n = config.los_exponent if is_los else config.nlos_exponent
    return beta0 * distance_m ** (-n)


def generate_link(
    tx: Position3D,
    rx: Position3D,
    is_los: bool,
    rng: np.random.Generator,
    carrier_frequency_hz: float,
    config: MultipathConfig = DEFAULT_MULTIPATH,
) -> LinkProfile:
    """Draw one multipath profile between two nodes.

    LOS: a deterministic first path at the free-space delay carrying the
    Rician K/(K+1) power share, plus reflected paths with exponential excess
    delays and geometrically decaying power fractions.  NLOS: Rayleigh path
    amplitudes with exponential excess delays.  In both cases the path powers
    sum exactly to pathloss(d).  Path phases come solely from the carrier
    phase term exp(-j*2*pi*f_c*delay); random phases are realized by
    sub-wavelength delay jitter.
    """
    d = link_distance(tx, rx)
    gain = pathloss(d, is_los, carrier_frequency_hz, config)
    los_delay = d / SPEED_OF_LIGHT
    jitter_scale = 1.0 / carrier_frequency_hz

    if is_los:
        n_ref = config.n_los_paths - 1
        k_lin = 10.0 ** (config.rician_k_db / 10.0)
        weights = np.exp(-config.reflected_power_decay * np.arange(n_ref))
        fractions = weights / weights.sum() / (k_lin + 1.0)
        excess = np.sort(
            rng.exponential(config.los_excess_delay_mean_s, n_ref)
            + rng.uniform(0.0, jitter_scale, n_ref)
        )
        delays = np.concatenate(([los_delay], los_delay + excess))
        powers = np.concatenate(([k_lin / (k_lin + 1.0)], fractions)) * gain
    else:
        n = config.n_nlos_paths
        excess = np.sort(
            rng.exponential(config.nlos_excess_delay_mean_s, n)
            + rng.uniform(0.0, jitter_scale, n)
        )
        delays = los_delay + excess
        amp = rng.rayleigh(1.0, n)
        powers = amp**2 * (gain / np.sum(amp**2))

    paths = [PathComponent(float(np.sqrt(p)), float(t)) for p, t in zip(powers, delays)]
    return LinkProfile(paths=paths, is_los=is_los)


def generate_realization(
    scenario: Scenario,
    ue: Position3D,
    rng: np.random.Generator,
    config: MultipathConfig = DEFAULT_MULTIPATH,
) -> ChannelRealization:
    """One direct NLOS profile and L LOS profile pairs from independent sub-streams."""
    from dataclasses import replace

    n_links = 1 + 2 * scenario.num_repeaters
    streams = rng.spawn(n_links)
    f_c = scenario.carrier_frequency_hz
    bs_config = config
    if config.bs_los_exponent is not None:
        bs_config = replace(config, los_exponent=config.bs_los_exponent)
    direct = generate_link(ue, scenario.bs, False, streams[0], f_c, config)
    ue_to_rep = []
    rep_to_bs = []
    for l, rep in enumerate(scenario.repeaters):
        ue_to_rep.append(generate_link(ue, rep, True, streams[1 + 2 * l], f_c, config))
        rep_to_bs.append(generate_link(rep, scenario.bs, True, streams[2 + 2 * l], f_c, bs_config))
    return ChannelRealization(direct=direct, ue_to_rep=ue_to_rep, rep_to_bs=rep_to_bs)
