"""Frequency-domain capacity pipeline: DFT, whitening, SVD, water-filling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .noise import NoiseModel
from .taps import TapSet, effective_taps

# relative floor on covariance eigenvalues when inverting / square-rooting
EIG_FLOOR_REL = 1e-14


@dataclass
class FrequencyChannel:
    gains: np.ndarray  # complex, shape (S,)
    num_subcarriers: int
    cyclic_prefix: int
    bandwidth_hz: float

    def __post_init__(self):
        if not 0 <= self.cyclic_prefix < self.num_subcarriers:
            raise ValueError("cyclic prefix must satisfy 0 <= T < S")


@dataclass
class CapacityResult:
    singular_values: np.ndarray  # descending, shape (S,)
    allocation: np.ndarray  # shape (S,), aligned with singular_values
    water_level: float  # nan when no subcarrier is usable
    capacity_bps: float


def to_frequency(taps: np.ndarray, num_subcarriers: int) -> np.ndarray:
    """Unnormalized S-point DFT of the zero-padded tap vector."""
    taps = np.asarray(taps)
    if taps.shape[0] > num_subcarriers:
        raise ValueError(
            f"tap count {taps.shape[0] - 1} must be smaller than the number of "
            f"subcarriers {num_subcarriers} (cyclic prefix constraint)"
        )
    return np.fft.fft(taps, n=num_subcarriers)


def frequency_noise_cov(cov: np.ndarray) -> np.ndarray:
    """Conjugate the time-domain covariance by the unitary DFT matrix: F D F^H."""
    s = cov.shape[0]
    fd = np.fft.fft(cov, axis=0) / np.sqrt(s)
    out = np.conj(np.fft.fft(np.conj(fd), axis=1)) / np.sqrt(s)
    return 0.5 * (out + out.conj().T)


def _floored_eigh(cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(cov)
    w = np.maximum(w, w.max() * EIG_FLOOR_REL)
    return w, v


def whitening_matrix(cov: np.ndarray) -> np.ndarray:
    """Inverse Hermitian square root of a positive definite covariance."""
    w, v = _floored_eigh(cov)
    return (v / np.sqrt(w)) @ v.conj().T


def whitened_singular_values(gains: np.ndarray, cov_freq: np.ndarray) -> np.ndarray:
    """Singular values of cov^(-1/2) diag(gains), descending.

    Computed from the Hermitian Gram form diag(g)^H cov^(-1) diag(g): one
    eigendecomposition instead of a matrix square root plus an SVD.
    """
    gains = np.asarray(gains)
    if not (np.all(np.isfinite(gains.view(float))) and np.all(np.isfinite(cov_freq.view(float)))):
        raise ValueError("non-finite channel gains or noise covariance")
    w, v = _floored_eigh(cov_freq)
    inv = (v / w) @ v.conj().T
    gram = np.conj(gains)[:, None] * inv * gains[None, :]
    gram = 0.5 * (gram + gram.conj().T)
    ev = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(ev, 0.0, None))[::-1]


def waterfill(sigma: np.ndarray, total_power: float) -> tuple[np.ndarray, float]:
    """Water-filling allocation maximizing sum log2(1 + sigma^2 q).

    Exact sort-and-scan solution: channels with sigma = 0 are excluded, the
    water level is closed-form on the active set.  Returns the allocation
    (aligned with the input order) and the water level (nan when every
    channel is dead or the budget is zero).
    """
    sigma = np.asarray(sigma, dtype=float)
    if np.any(sigma < 0) or total_power < 0:
        raise ValueError("singular values and power budget must be non-negative")
    alloc = np.zeros_like(sigma)
    active = sigma > 0
    if not np.any(active) or total_power == 0:
        return alloc, float("nan")
    inv_snr = 1.0 / sigma[active] ** 2
    order = np.argsort(inv_snr)
    g = inv_snr[order]
    csum = np.cumsum(g)
    mu = float("nan")
    for k in range(g.size, 0, -1):
        candidate = (total_power + csum[k - 1]) / k
        if candidate > g[k - 1]:
            mu = candidate
            break
    q_active = np.maximum(0.0, mu - inv_snr)
    alloc[active] = q_active
    return alloc, mu


def capacity(
    sigma: np.ndarray,
    allocation: np.ndarray,
    bandwidth_hz: float,
    num_subcarriers: int,
    cyclic_prefix: int,
) -> float:
    """Capacity in bit/s with the cyclic-prefix rate penalty B / (T + S)."""
    sigma = np.asarray(sigma, dtype=float)
    allocation = np.asarray(allocation, dtype=float)
    spectral_sum = np.sum(np.log2(1.0 + sigma**2 * allocation))
    return bandwidth_hz / (cyclic_prefix + num_subcarriers) * float(spectral_sum)


def compute_capacity(
    taps: TapSet,
    alpha: np.ndarray,
    noise: NoiseModel,
    num_subcarriers: int,
    power_psd_w_hz: float,
) -> CapacityResult:
    """Full pipeline from a tap set and amplification vector to capacity."""
    h = effective_taps(taps, alpha)
    gains = to_frequency(h, num_subcarriers)
    cov = noise.total(alpha, num_subcarriers)
    cov_freq = frequency_noise_cov(cov)
    sigma = whitened_singular_values(gains, cov_freq)
    alloc, mu = waterfill(sigma, power_psd_w_hz * num_subcarriers)
    cap = capacity(sigma, alloc, taps.bandwidth_hz, num_subcarriers, taps.tap_count)
    return CapacityResult(
        singular_values=sigma, allocation=alloc, water_level=mu, capacity_bps=cap
    )
