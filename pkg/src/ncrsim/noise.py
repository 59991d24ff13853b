"""Covariance of the effective receiver noise.

Each active repeater re-radiates its own thermal noise through the
repeater-to-BS multipath, producing a Hermitian-Toeplitz covariance block;
the total covariance is the alpha^2-weighted block sum plus the white BS
receiver noise floor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import toeplitz

from .channel import LinkProfile

# -174 dBm/Hz thermal density
THERMAL_NOISE_DBM_HZ = -174.0
DEFAULT_NOISE_FIGURE_DB = 7.0


def noise_psd_w_hz(
    noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB,
    override_dbm_hz: float | None = None,
) -> float:
    """Noise PSD N0 in W/Hz from thermal density plus receiver noise figure."""
    dbm_hz = override_dbm_hz if override_dbm_hz is not None else THERMAL_NOISE_DBM_HZ + noise_figure_db
    return 10.0 ** (dbm_hz / 10.0) * 1e-3


def noise_cross_term(
    bs_link: LinkProfile,
    lag: int,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    n0: float,
) -> complex:
    """Covariance of a repeater's forwarded noise at sample lag r1 - r2.

    Double sum over the BS-link path pairs; depends on the sample indices only
    through the lag, so the per-repeater covariance block is Toeplitz.
    """
    a = bs_link.attenuations
    tau = bs_link.delays
    dtau = tau[:, None] - tau[None, :]
    terms = (
        np.outer(a, a)
        * np.exp(-2j * np.pi * carrier_frequency_hz * dtau)
        * np.sinc(lag - bandwidth_hz * dtau)
    )
    return complex(n0 * terms.sum())


def covariance_lags(
    bs_link: LinkProfile,
    num_lags: int,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    n0: float,
) -> np.ndarray:
    """Vector of noise_cross_term values for lags 0 .. num_lags - 1."""
    a = bs_link.attenuations
    tau = bs_link.delays
    dtau = tau[:, None] - tau[None, :]
    phase = np.outer(a, a) * np.exp(-2j * np.pi * carrier_frequency_hz * dtau)
    lags = np.arange(num_lags)
    sincs = np.sinc(lags[:, None, None] - bandwidth_hz * dtau[None, :, :])
    return n0 * np.einsum("ij,kij->k", phase, sincs)


def build_repeater_covariance(
    bs_link: LinkProfile,
    num_samples: int,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    n0: float,
) -> np.ndarray:
    """Hermitian-Toeplitz S x S covariance block of one repeater's forwarded noise."""
    if num_samples < 1:
        raise ValueError("num_samples must be at least 1")
    lags = covariance_lags(bs_link, num_samples, bandwidth_hz, carrier_frequency_hz, n0)
    return toeplitz(lags, np.conj(lags))


def total_covariance(
    blocks: list[np.ndarray],
    alpha: np.ndarray,
    n0: float,
    num_samples: int,
) -> np.ndarray:
    """Total effective-noise covariance: sum of alpha_l^2 blocks plus N0 I."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (len(blocks),):
        raise ValueError(f"alpha has length {alpha.shape}, expected ({len(blocks)},)")
    total = n0 * np.eye(num_samples, dtype=complex)
    for a, block in zip(alpha, blocks):
        if a > 0:
            total = total + a**2 * block
    # force exact Hermitian symmetry against accumulated rounding
    return 0.5 * (total + total.conj().T)


@dataclass
class NoiseModel:
    """Assembled noise statistics for one realization and sample count."""

    n0: float
    blocks: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def from_links(
        cls,
        rep_to_bs: list[LinkProfile],
        num_samples: int,
        bandwidth_hz: float,
        carrier_frequency_hz: float,
        n0: float,
    ) -> "NoiseModel":
        blocks = [
            build_repeater_covariance(link, num_samples, bandwidth_hz, carrier_frequency_hz, n0)
            for link in rep_to_bs
        ]
        return cls(n0=n0, blocks=blocks)

    def total(self, alpha: np.ndarray, num_samples: int) -> np.ndarray:
        return total_covariance(self.blocks, alpha, self.n0, num_samples)
