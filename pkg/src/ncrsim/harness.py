"""Monte-Carlo experiment driver: bandwidth and amplification sweeps.

Randomness is counter-based: every UE drop, channel realization, and random
strategy choice gets its own seed derived from (master seed, domain, indices),
so results are identical under any execution schedule and the same channel
realization is shared by all strategies and sweep points.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np

from .activation import DEFAULT_DB_CONVENTION, STRATEGY_KINDS, Strategy, select
from .capacity import CapacityResult, compute_capacity
from .channel import ChannelRealization, MultipathConfig, generate_realization
from .geometry import Position3D, Scenario, drop_ue, make_scenario
from .noise import DEFAULT_NOISE_FIGURE_DB, NoiseModel, noise_psd_w_hz
from .taps import (
    DEFAULT_GUARD_TAPS,
    DEFAULT_PRECURSOR_TAPS,
    DEFAULT_REPEATER_DELAY_S,
    TapSet,
    build_tap_set,
)

# seed-stream domains
_DOMAIN_DROP = 0
_DOMAIN_CHANNEL = 1
_DOMAIN_STRATEGY = 2

CSV_HEADER = "experiment,strategy,bandwidth_hz,alpha_db,drop,realization,capacity_bps,seed"


@dataclass
class ExperimentConfig:
    # deployment
    area_side_m: float = 1000.0
    grid_dim: int = 4
    bs_height_m: float = 25.0
    repeater_height_m: float = 15.0
    ue_height_m: float = 1.5
    carrier_frequency_hz: float = 3e9
    # OFDM numerology and power
    subcarrier_spacing_hz: float = 150e3
    signal_psd_w_hz: float = 2e-8  # 20 mW/MHz
    # channel and noise models
    channel: MultipathConfig = field(default_factory=MultipathConfig)
    noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB
    n0_override_dbm_hz: float | None = None
    guard_taps: int = DEFAULT_GUARD_TAPS
    precursor_taps: int = DEFAULT_PRECURSOR_TAPS
    repeater_delay_s: float = DEFAULT_REPEATER_DELAY_S
    # Monte-Carlo protocol
    n_drops: int = 5
    n_realizations: int = 3
    seed: int = 2024
    strategies: tuple[str, ...] = STRATEGY_KINDS
    alpha_db: float = 30.0
    rand_count: int = 3
    db_convention: str = DEFAULT_DB_CONVENTION
    # sweeps (desk-scale defaults; larger campaigns reachable via config)
    fig1_bandwidths_hz: tuple[float, ...] = (7.5e6, 15e6, 30e6)
    fig2_alphas_db: tuple[float, ...] = (0.0, 10.0, 20.0, 30.0, 40.0, 50.0)
    fig2_num_subcarriers: int = 256

    def scenario(self) -> Scenario:
        return make_scenario(
            area_side=self.area_side_m,
            grid_dim=self.grid_dim,
            bs_height=self.bs_height_m,
            repeater_height=self.repeater_height_m,
            ue_height=self.ue_height_m,
            carrier_frequency_hz=self.carrier_frequency_hz,
        )

    def n0(self) -> float:
        return noise_psd_w_hz(self.noise_figure_db, self.n0_override_dbm_hz)

    def strategy(self, kind: str, alpha_db: float | None = None) -> Strategy:
        return Strategy(
            kind=kind,
            alpha_db=self.alpha_db if alpha_db is None else alpha_db,
            rand_count=self.rand_count,
            db_convention=self.db_convention,
        )


@dataclass(frozen=True)
class SweepPoint:
    experiment: str  # "fig1" / "fig2" / "single"
    index: int
    bandwidth_hz: float
    num_subcarriers: int
    alpha_db: float


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    strategy: str
    bandwidth_hz: float
    alpha_db: float
    drop: int
    realization: int
    capacity_bps: float
    seed: int


def _stream(seed: int, domain: int, *indices: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, domain, *indices)))


def ue_position(config: ExperimentConfig, scenario: Scenario, drop: int) -> Position3D:
    return drop_ue(scenario, _stream(config.seed, _DOMAIN_DROP, drop))


def channel_for(
    config: ExperimentConfig, scenario: Scenario, ue: Position3D, drop: int, realization: int
) -> ChannelRealization:
    rng = _stream(config.seed, _DOMAIN_CHANNEL, drop, realization)
    return generate_realization(scenario, ue, rng, config.channel)


def _alpha_for(
    config: ExperimentConfig,
    scenario: Scenario,
    ue: Position3D,
    strategy: Strategy,
    point: SweepPoint,
    drop: int,
    realization: int,
) -> np.ndarray:
    rng = _stream(config.seed, _DOMAIN_STRATEGY, point.index, drop, realization)
    return select(strategy, scenario, ue, rng)


def _evaluate(
    config: ExperimentConfig,
    scenario: Scenario,
    ue: Position3D,
    taps: TapSet,
    noise: NoiseModel,
    strategy: Strategy,
    point: SweepPoint,
    drop: int,
    realization: int,
) -> CapacityResult:
    alpha = _alpha_for(config, scenario, ue, strategy, point, drop, realization)
    return compute_capacity(
        taps, alpha, noise, point.num_subcarriers, config.signal_psd_w_hz
    )


def _build_physics(
    config: ExperimentConfig,
    scenario: Scenario,
    realization_obj: ChannelRealization,
    point: SweepPoint,
) -> tuple[TapSet, NoiseModel]:
    taps = build_tap_set(
        realization_obj,
        point.bandwidth_hz,
        config.carrier_frequency_hz,
        guard_taps=config.guard_taps,
        repeater_delay_s=config.repeater_delay_s,
        precursor_taps=config.precursor_taps,
        # the cyclic prefix may not exceed the OFDM symbol, so the precursor
        # window shrinks automatically at narrow bandwidths
        max_tap_count=point.num_subcarriers - 1,
    )
    noise = NoiseModel.from_links(
        realization_obj.rep_to_bs,
        point.num_subcarriers,
        point.bandwidth_hz,
        config.carrier_frequency_hz,
        config.n0(),
    )
    return taps, noise


def run_single(
    config: ExperimentConfig,
    drop: int,
    realization: int,
    strategy: Strategy,
    point: SweepPoint,
) -> ResultRow:
    """One (drop, realization, strategy, sweep point) capacity evaluation."""
    scenario = config.scenario()
    ue = ue_position(config, scenario, drop)
    realization_obj = channel_for(config, scenario, ue, drop, realization)
    taps, noise = _build_physics(config, scenario, realization_obj, point)
    result = _evaluate(
        config, scenario, ue, taps, noise, strategy, point, drop, realization
    )
    return ResultRow(
        experiment=point.experiment,
        strategy=strategy.kind,
        bandwidth_hz=point.bandwidth_hz,
        alpha_db=strategy.alpha_db,
        drop=drop,
        realization=realization,
        capacity_bps=result.capacity_bps,
        seed=config.seed,
    )


def _subcarriers_for_bandwidth(config: ExperimentConfig, bandwidth_hz: float) -> int:
    s = bandwidth_hz / config.subcarrier_spacing_hz
    if abs(s - round(s)) > 1e-9:
        raise ValueError(
            f"bandwidth {bandwidth_hz} Hz is not a multiple of the subcarrier "
            f"spacing {config.subcarrier_spacing_hz} Hz"
        )
    return int(round(s))


def _run_sweep(config: ExperimentConfig, points: list[SweepPoint]) -> list[ResultRow]:
    """Shared sweep driver; row order is sweep-major, then strategy, drop, realization."""
    scenario = config.scenario()
    ues = [ue_position(config, scenario, d) for d in range(config.n_drops)]
    realizations = {
        (d, r): channel_for(config, scenario, ues[d], d, r)
        for d in range(config.n_drops)
        for r in range(config.n_realizations)
    }
    results: dict[tuple[int, str, int, int], float] = {}
    for point in points:
        strategies = [
            config.strategy(kind, alpha_db=point.alpha_db) for kind in config.strategies
        ]
        for d in range(config.n_drops):
            for r in range(config.n_realizations):
                taps, noise = _build_physics(config, scenario, realizations[(d, r)], point)
                for strat in strategies:
                    res = _evaluate(
                        config, scenario, ues[d], taps, noise, strat, point, d, r
                    )
                    results[(point.index, strat.kind, d, r)] = res.capacity_bps
    rows = []
    for point in points:
        for kind in config.strategies:
            for d in range(config.n_drops):
                for r in range(config.n_realizations):
                    rows.append(
                        ResultRow(
                            experiment=point.experiment,
                            strategy=kind,
                            bandwidth_hz=point.bandwidth_hz,
                            alpha_db=point.alpha_db,
                            drop=d,
                            realization=r,
                            capacity_bps=results[(point.index, kind, d, r)],
                            seed=config.seed,
                        )
                    )
    return rows


def run_fig1_sweep(config: ExperimentConfig) -> list[ResultRow]:
    """Capacity versus bandwidth at fixed amplification; S tracks B at fixed spacing."""
    points = [
        SweepPoint(
            experiment="fig1",
            index=i,
            bandwidth_hz=b,
            num_subcarriers=_subcarriers_for_bandwidth(config, b),
            alpha_db=config.alpha_db,
        )
        for i, b in enumerate(config.fig1_bandwidths_hz)
    ]
    return _run_sweep(config, points)


def run_fig2_sweep(config: ExperimentConfig) -> list[ResultRow]:
    """Capacity versus amplification factor at fixed bandwidth and subcarrier count."""
    s = config.fig2_num_subcarriers
    b = s * config.subcarrier_spacing_hz
    points = [
        SweepPoint(experiment="fig2", index=i, bandwidth_hz=b, num_subcarriers=s, alpha_db=a)
        for i, a in enumerate(config.fig2_alphas_db)
    ]
    return _run_sweep(config, points)


def _format_row(row: ResultRow) -> list[str]:
    return [
        row.experiment,
        row.strategy,
        f"{row.bandwidth_hz:.1f}",
        f"{row.alpha_db:.2f}",
        str(row.drop),
        str(row.realization),
        f"{row.capacity_bps:.6f}",
        str(row.seed),
    ]


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(_format_row(row))
    return buf.getvalue()


def emit_csv(rows: list[ResultRow], path: str) -> None:
    """Write the result table; header and row order are part of the contract."""
    try:
        with open(path, "w", newline="") as f:
            f.write(rows_to_csv(rows))
    except OSError as exc:
        raise OSError(f"failed to write results to {path}: {exc}") from exc


def parse_csv(path_or_text: str, from_text: bool = False) -> list[ResultRow]:
    text = path_or_text if from_text else open(path_or_text).read()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ValueError(f"unexpected CSV header: {header}")
    rows = []
    for rec in reader:
        rows.append(
            ResultRow(
                experiment=rec[0],
                strategy=rec[1],
                bandwidth_hz=float(rec[2]),
                alpha_db=float(rec[3]),
                drop=int(rec[4]),
                realization=int(rec[5]),
                capacity_bps=float(rec[6]),
                seed=int(rec[7]),
            )
        )
    return rows


def summarize(rows: list[ResultRow]) -> dict[tuple[str, float, float], float]:
    """Seed-averaged capacity per (strategy, bandwidth, alpha).

    Per-drop mean over realizations first, then mean over drops.
    """
    groups: dict[tuple[str, float, float], dict[int, list[float]]] = {}
    for row in rows:
        key = (row.strategy, row.bandwidth_hz, row.alpha_db)
        groups.setdefault(key, {}).setdefault(row.drop, []).append(row.capacity_bps)
    return {
        key: float(np.mean([np.mean(v) for v in per_drop.values()]))
        for key, per_drop in groups.items()
    }


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from a flat mapping (e.g. a parsed YAML file)."""
    data = dict(data)
    channel_data = data.pop("channel", {})
    cfg = ExperimentConfig()
    channel = replace(cfg.channel, **channel_data)
    known = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in ("strategies", "fig1_bandwidths_hz", "fig2_alphas_db"):
        if key in data:
            data[key] = tuple(data[key])
    return replace(cfg, channel=channel, **data)


def load_config(path: str) -> ExperimentConfig:
    import yaml

    with open(path) as f:
        data = yaml.safe_load(f) or {}
    return config_from_dict(data)
