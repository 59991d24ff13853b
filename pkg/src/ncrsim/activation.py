"""Repeater activation strategies mapping a UE drop to an amplification vector."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Position3D, Scenario, distance3d

STRATEGY_KINDS = ("none", "all", "closest_one", "closeby_plus_rand")

# How alpha_db maps to a linear amplitude gain.  "db20" is the conventional
# amplitude reading 10^(dB/20); "db10" reads the dB value directly onto the
# amplitude, 10^(dB/10).
DB_CONVENTIONS = ("db10", "db20")
DEFAULT_DB_CONVENTION = "db10"


def alpha_db_to_linear(alpha_db: float, convention: str = DEFAULT_DB_CONVENTION) -> float:
    if convention not in DB_CONVENTIONS:
        raise ValueError(f"unknown dB convention {convention!r}")
    divisor = 10.0 if convention == "db10" else 20.0
    return 10.0 ** (alpha_db / divisor)


@dataclass
class Strategy:
    kind: str
    alpha_db: float = 30.0
    rand_count: int = 3
    db_convention: str = DEFAULT_DB_CONVENTION

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")

    @property
    def alpha_linear(self) -> float:
        return alpha_db_to_linear(self.alpha_db, self.db_convention)


def closest_repeater(scenario: Scenario, ue: Position3D) -> int:
    """Index of the repeater nearest the UE; ties broken by lowest index."""
    if scenario.num_repeaters == 0:
        raise ValueError("scenario has no repeaters")
    dists = [distance3d(ue, rep) for rep in scenario.repeaters]
    return int(np.argmin(dists))


def select(
    strategy: Strategy,
    scenario: Scenario,
    ue: Position3D,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Amplification vector for one UE drop under the given strategy."""
    n = scenario.num_repeaters
    alpha = np.zeros(n)
    if strategy.kind == "none":
        return alpha
    if n == 0:
        raise ValueError(f"strategy {strategy.kind!r} requires at least one repeater")
    gain = strategy.alpha_linear
    if strategy.kind == "all":
        alpha[:] = gain
    elif strategy.kind == "closest_one":
        alpha[closest_repeater(scenario, ue)] = gain
    elif strategy.kind == "closeby_plus_rand":
        if strategy.rand_count >= n:
            raise ValueError("rand_count must be smaller than the number of repeaters")
        if rng is None:
            raise ValueError("closeby_plus_rand requires a random stream")
        closest = closest_repeater(scenario, ue)
        others = np.delete(np.arange(n), closest)
        chosen = rng.choice(others, size=strategy.rand_count, replace=False)
        alpha[closest] = gain
        alpha[chosen] = gain
    return alpha
