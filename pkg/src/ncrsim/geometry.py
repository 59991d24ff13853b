"""Deployment geometry: base station at the area center, repeater grid, random UE drops."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Horizontal distances below this are clamped before entering the pathloss
# model (near-field singularity of the log-distance law).
MIN_PATHLOSS_DISTANCE_M = 1.0


@dataclass(frozen=True)
class Position3D:
    """A point in the deployment area, in meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ValueError("coordinates must be finite")
        if self.z < 0:
            raise ValueError("height must be non-negative")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass
class Scenario:
    """Square network area with the BS at its center and a fixed repeater layout."""

    area_side: float
    bs: Position3D
    repeaters: list[Position3D] = field(default_factory=list)
    bs_height: float = 25.0
    repeater_height: float = 15.0
    ue_height: float = 1.5
    carrier_frequency_hz: float = 3e9

    def __post_init__(self):
        if self.area_side < 0:
            raise ValueError("area_side must be non-negative")
        for p in self.repeaters:
            if not (0.0 <= p.x <= self.area_side and 0.0 <= p.y <= self.area_side):
                raise ValueError(f"repeater at ({p.x}, {p.y}) outside the area")

    @property
    def num_repeaters(self) -> int:
        return len(self.repeaters)


def place_repeaters_grid(area_side: float, grid_dim: int, height: float) -> list[Position3D]:
    """Cell-centered uniform grid of grid_dim x grid_dim repeater positions.

    Coordinates are area_side * (2i + 1) / (2 * grid_dim) on each axis, so no
    repeater sits on the area boundary.
    """
    if area_side <= 0:
        raise ValueError("area_side must be positive")
    if grid_dim < 1:
        raise ValueError("grid_dim must be at least 1")
    coords = [area_side * (2 * i + 1) / (2 * grid_dim) for i in range(grid_dim)]
    return [Position3D(x, y, height) for x in coords for y in coords]


def make_scenario(
    area_side: float = 1000.0,
    grid_dim: int = 4,
    bs_height: float = 25.0,
    repeater_height: float = 15.0,
    ue_height: float = 1.5,
    carrier_frequency_hz: float = 3e9,
) -> Scenario:
    """Build the default deployment: centered BS plus a cell-centered repeater grid."""
    bs = Position3D(area_side / 2, area_side / 2, bs_height)
    repeaters = place_repeaters_grid(area_side, grid_dim, repeater_height) if grid_dim > 0 else []
    return Scenario(
        area_side=area_side,
        bs=bs,
        repeaters=repeaters,
        bs_height=bs_height,
        repeater_height=repeater_height,
        ue_height=ue_height,
        carrier_frequency_hz=carrier_frequency_hz,
    )


def drop_ue(scenario: Scenario, rng: np.random.Generator) -> Position3D:
    """Drop a UE uniformly at random inside the network area at UE height."""
    x = rng.uniform(0.0, scenario.area_side) if scenario.area_side > 0 else 0.0
    y = rng.uniform(0.0, scenario.area_side) if scenario.area_side > 0 else 0.0
    return Position3D(x, y, scenario.ue_height)


def distance3d(a: Position3D, b: Position3D) -> float:
    """Euclidean distance in meters."""
    return math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))


def link_distance(a: Position3D, b: Position3D) -> float:
    """Distance used by the pathloss model, floored at 1 m."""
    return max(distance3d(a, b), MIN_PATHLOSS_DISTANCE_M)
