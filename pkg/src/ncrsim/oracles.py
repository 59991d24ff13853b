"""Brute-force reference implementations used by the test suite.

These stay independent of the fast paths they certify: simulated
filtered-noise covariance, explicit whiten-then-SVD singular values, and an
exhaustive grid search for the power allocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .channel import LinkProfile


@dataclass
class OracleConfig:
    oversampling: int = 16  # samples per 1/B
    sinc_half_width: float = 40.0  # kernel truncation, in units of 1/B
    num_samples: int = 200_000  # Monte-Carlo window draws
    chunk: int = 10_000

    def __post_init__(self):
        if self.oversampling < 4:
            raise ValueError("oversampling must be at least 4")
        if self.sinc_half_width < 10:
            raise ValueError("sinc half-width must be at least 10")


DEFAULT_ORACLE = OracleConfig()


def _window_matrix(
    link: LinkProfile,
    num_samples_out: int,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    cfg: OracleConfig,
) -> tuple[np.ndarray, float]:
    """Map oversampled white-noise samples to the S symbol-rate outputs.

    Row r approximates the convolution integral of the repeater-to-BS filter
    (truncated sinc superposition) evaluated at t = r/B.
    """
    b = bandwidth_hz
    dt = 1.0 / (b * cfg.oversampling)
    hw = cfg.sinc_half_width / b
    # work relative to the earliest path; a constant shift leaves the
    # stationary covariance unchanged
    tau0 = float(link.delays.min())
    rel = link.delays - tau0
    grid = np.arange(-(rel.max() + hw), (num_samples_out - 1) / b - 0.0 + hw + dt, dt)
    t_out = np.arange(num_samples_out) / b
    # g'(t) = sum_j a_j exp(-j 2 pi f_c tau_j) sqrt(B) sinc(B (t - rel_j))
    coeff = link.attenuations * np.exp(
        -2j * np.pi * carrier_frequency_hz * link.delays
    )
    arg = t_out[:, None, None] - grid[None, :, None] - rel[None, None, :]
    g = np.einsum("j,rmj->rm", coeff, np.sinc(b * arg)) * np.sqrt(b)
    return dt * g, dt


def mc_noise_covariance(
    bs_links: list[LinkProfile],
    alpha: np.ndarray,
    n0: float,
    num_samples_out: int,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    cfg: OracleConfig = DEFAULT_ORACLE,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Monte-Carlo estimate of the effective-noise covariance.

    Draws white complex Gaussian noise on an oversampled grid, filters it
    through each repeater's truncated-sinc BS channel, scales by alpha, adds
    the BS receiver noise, and accumulates the empirical covariance of
    S-length symbol-rate windows.
    """
    if rng is None:
        rng = np.random.default_rng()
    alpha = np.asarray(alpha, dtype=float)
    mats = []
    for a, link in zip(alpha, bs_links):
        if a > 0:
            g, dt = _window_matrix(
                link, num_samples_out, bandwidth_hz, carrier_frequency_hz, cfg
            )
            mats.append((a, g, dt))
    # single precision is plenty: the estimator's statistical error at any
    # feasible sample count dwarfs float32 rounding, and it halves the memory
    # traffic of the sample generation and filtering products
    mats = [(a, g.astype(np.complex64), dt) for a, g, dt in mats]
    acc = np.zeros((num_samples_out, num_samples_out), dtype=complex)
    done = 0
    while done < cfg.num_samples:
        n = min(cfg.chunk, cfg.num_samples - done)
        x = np.float32(np.sqrt(n0 / 2.0)) * (
            rng.standard_normal((num_samples_out, n), dtype=np.float32)
            + 1j * rng.standard_normal((num_samples_out, n), dtype=np.float32)
        ).astype(np.complex64)
        for a, g, dt in mats:
            # E|w|^2 = n0/dt per oversampled sample
            w = (
                rng.standard_normal((g.shape[1], n), dtype=np.float32)
                + 1j * rng.standard_normal((g.shape[1], n), dtype=np.float32)
            ).astype(np.complex64)
            x += (a * np.sqrt(n0 / (2.0 * dt))).astype(np.float32) * (g @ w)
        acc += (x @ x.conj().T).astype(complex)
        done += n
    return acc / cfg.num_samples


def direct_svd_singular_values(gains: np.ndarray, cov_freq: np.ndarray) -> np.ndarray:
    """Explicit whiten-then-SVD reference: svd(cov^(-1/2) diag(gains)), descending."""
    w, v = np.linalg.eigh(cov_freq)
    w = np.maximum(w, w.max() * 1e-14)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return np.linalg.svd(inv_sqrt @ np.diag(gains), compute_uv=False)


def grid_search_allocation(
    sigma: np.ndarray, budget: float, grid_resolution: int = 200
) -> np.ndarray:
    """Exhaustive simplex search maximizing sum log2(1 + sigma^2 q).

    Only tractable for very small channel counts; certifies the water-filling
    solution within the grid spacing.
    """
    sigma = np.asarray(sigma, dtype=float)
    s = sigma.size
    if s > 4:
        raise ValueError("grid search limited to at most 4 channels")
    step = budget / grid_resolution
    best_obj = -np.inf
    best = np.zeros(s)
    counts = range(grid_resolution + 1)
    for combo in product(counts, repeat=s - 1):
        used = sum(combo)
        if used > grid_resolution:
            continue
        q = np.array([*combo, grid_resolution - used], dtype=float) * step
        obj = np.sum(np.log2(1.0 + sigma**2 * q))
        if obj > best_obj:
            best_obj = obj
            best = q
    return best


def unitary_dft(num_subcarriers: int) -> np.ndarray:
    """Unitary DFT matrix with entries exp(-j 2 pi r v / S) / sqrt(S)."""
    idx = np.arange(num_subcarriers)
    return np.exp(-2j * np.pi * np.outer(idx, idx) / num_subcarriers) / np.sqrt(
        num_subcarriers
    )
