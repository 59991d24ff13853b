"""Discrete complex tap synthesis from multipath profiles.

The symbol-rate channel taps are sampled sinc superpositions of the path
components, with the receiver clock offset anchored at the earliest arrival.
The effective channel is affine in the repeater amplification vector:
h[l] = direct_taps[l] + repeater_taps[l, :] @ alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, LinkProfile

DEFAULT_GUARD_TAPS = 12
DEFAULT_PRECURSOR_TAPS = 32
DEFAULT_REPEATER_DELAY_S = 10e-9


@dataclass
class TapSet:
    """Tap-domain channel for one realization at one bandwidth."""

    eta: float  # receiver clock offset, seconds
    tap_count: int  # T; tap vectors have T + 1 entries
    direct_taps: np.ndarray  # complex, shape (T + 1,)
    repeater_taps: np.ndarray  # complex, shape (T + 1, L)
    bandwidth_hz: float
    repeater_delays: np.ndarray  # seconds, shape (L,)

    @property
    def num_repeaters(self) -> int:
        return self.repeater_taps.shape[1]


def _composite_delays(
    realization: ChannelRealization, repeater_delays: np.ndarray
) -> np.ndarray:
    """All arrival delays seen at the BS: direct paths and UE->rep->BS pairs."""
    parts = [realization.direct.delays]
    for l in range(realization.num_repeaters):
        tu = realization.ue_to_rep[l].delays
        tb = realization.rep_to_bs[l].delays
        parts.append((tu[:, None] + tb[None, :] + repeater_delays[l]).ravel())
    return np.concatenate(parts)


def select_reference_and_length(
    realization: ChannelRealization,
    repeater_delays: np.ndarray,
    bandwidth_hz: float,
    guard_taps: int = DEFAULT_GUARD_TAPS,
    precursor_taps: int = 0,
    max_tap_count: int | None = None,
) -> tuple[float, int]:
    """Choose the clock offset eta and tap count T for one realization.

    eta is anchored precursor_taps samples before the earliest arrival and T
    covers the delay span plus the precursor and a trailing guard.  Band
    limitation smears each path symmetrically around its arrival time, so the
    precursor window captures the anti-causal sinc tails ahead of the first
    path; without it the capacity would depend noticeably on where the window
    starts.  When max_tap_count is given the precursor is shrunk (never below
    zero) so that T stays within it, which keeps T compatible with the cyclic
    prefix constraint T < S at narrow bandwidths.
    """
    delays = _composite_delays(realization, np.asarray(repeater_delays, dtype=float))
    if delays.size == 0:
        raise ValueError("realization contains no propagation paths")
    first = float(delays.min())
    span = float(delays.max()) - first
    # epsilon guards against ceil() picking up float noise on exact spans
    base = math.ceil(bandwidth_hz * span - 1e-9) + guard_taps
    if max_tap_count is not None:
        precursor_taps = max(0, min(precursor_taps, max_tap_count - base))
    eta = first - precursor_taps / bandwidth_hz
    return eta, max(base + precursor_taps, 0)


def _taps_from_paths(
    amplitudes: np.ndarray,
    delays: np.ndarray,
    eta: float,
    bandwidth_hz: float,
    tap_count: int,
    carrier_frequency_hz: float,
) -> np.ndarray:
    ell = np.arange(tap_count + 1)
    phases = amplitudes * np.exp(-2j * np.pi * carrier_frequency_hz * (delays - eta))
    window = np.sinc(ell[:, None] + bandwidth_hz * (eta - delays[None, :]))
    return window @ phases


def compute_direct_taps(
    direct: LinkProfile,
    eta: float,
    bandwidth_hz: float,
    tap_count: int,
    carrier_frequency_hz: float,
) -> np.ndarray:
    """Direct-channel taps: sum of carrier-phased sincs over the NLOS paths."""
    return _taps_from_paths(
        direct.attenuations, direct.delays, eta, bandwidth_hz, tap_count, carrier_frequency_hz
    )


def compute_repeater_taps(
    ue_link: LinkProfile,
    bs_link: LinkProfile,
    repeater_delay: float,
    eta: float,
    bandwidth_hz: float,
    tap_count: int,
    carrier_frequency_hz: float,
) -> np.ndarray:
    """Per-repeater taps (excluding the amplification factor).

    The double sum over the UE-side and BS-side paths collapses to a single
    path list with product amplitudes and composite delays.
    """
    amps = np.outer(ue_link.attenuations, bs_link.attenuations).ravel()
    delays = (
        ue_link.delays[:, None] + bs_link.delays[None, :] + repeater_delay
    ).ravel()
    return _taps_from_paths(amps, delays, eta, bandwidth_hz, tap_count, carrier_frequency_hz)


def build_tap_set(
    realization: ChannelRealization,
    bandwidth_hz: float,
    carrier_frequency_hz: float,
    guard_taps: int = DEFAULT_GUARD_TAPS,
    repeater_delay_s: float = DEFAULT_REPEATER_DELAY_S,
    precursor_taps: int = 0,
    max_tap_count: int | None = None,
    eta_and_tap_count: tuple[float, int] | None = None,
) -> TapSet:
    """Synthesize the full tap set for one channel realization."""
    n_rep = realization.num_repeaters
    repeater_delays = np.full(n_rep, repeater_delay_s)
    if eta_and_tap_count is None:
        eta, t = select_reference_and_length(
            realization,
            repeater_delays,
            bandwidth_hz,
            guard_taps,
            precursor_taps,
            max_tap_count,
        )
    else:
        eta, t = eta_and_tap_count
    direct = compute_direct_taps(
        realization.direct, eta, bandwidth_hz, t, carrier_frequency_hz
    )
    rep = np.zeros((t + 1, n_rep), dtype=complex)
    for l in range(n_rep):
        rep[:, l] = compute_repeater_taps(
            realization.ue_to_rep[l],
            realization.rep_to_bs[l],
            repeater_delays[l],
            eta,
            bandwidth_hz,
            t,
            carrier_frequency_hz,
        )
    return TapSet(
        eta=eta,
        tap_count=t,
        direct_taps=direct,
        repeater_taps=rep,
        bandwidth_hz=bandwidth_hz,
        repeater_delays=repeater_delays,
    )


def effective_taps(taps: TapSet, alpha: np.ndarray) -> np.ndarray:
    """h[l] = direct + repeater taps weighted by the amplification vector."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (taps.num_repeaters,):
        raise ValueError(
            f"alpha has length {alpha.shape}, expected ({taps.num_repeaters},)"
        )
    if np.any(alpha < 0):
        raise ValueError("amplification factors must be non-negative")
    return taps.direct_taps + taps.repeater_taps @ alpha
