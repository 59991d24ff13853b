"""Wideband capacity simulator for SISO-OFDM uplinks assisted by a swarm of
network-controlled amplify-and-forward repeaters."""

from .activation import Strategy, select
from .capacity import CapacityResult, compute_capacity, waterfill
from .channel import (
    ChannelRealization,
    LinkProfile,
    MultipathConfig,
    PathComponent,
    generate_link,
    generate_realization,
    pathloss,
)
from .geometry import Position3D, Scenario, distance3d, drop_ue, make_scenario, place_repeaters_grid
from .harness import ExperimentConfig, ResultRow, run_fig1_sweep, run_fig2_sweep, run_single
from .noise import NoiseModel, noise_psd_w_hz
from .taps import TapSet, build_tap_set, effective_taps

__all__ = [
    "CapacityResult",
    "ChannelRealization",
    "ExperimentConfig",
    "LinkProfile",
    "MultipathConfig",
    "NoiseModel",
    "PathComponent",
    "Position3D",
    "ResultRow",
    "Scenario",
    "Strategy",
    "TapSet",
    "build_tap_set",
    "compute_capacity",
    "distance3d",
    "drop_ue",
    "effective_taps",
    "generate_link",
    "generate_realization",
    "make_scenario",
    "noise_psd_w_hz",
    "pathloss",
    "place_repeaters_grid",
    "run_fig1_sweep",
    "run_fig2_sweep",
    "run_single",
    "select",
    "waterfill",
]
