"""
Capacity tradeoff curves of a two-user channel, one channel realization per seed, and the equal-capacity
improvement of the comparative-advantage ordering over the anti-CA and random baselines.
"""

from os.path import join
from typing import Dict, List

import numpy as np
import pandas as pd

from comparative_alloc.cfg.scenario import Scenario, init_run, make_scenario
from comparative_alloc.errors import InvariantViolation, ValidationError
from comparative_alloc.metrics.capacity import full_channel_capacities
from comparative_alloc.metrics.tradeoff import (
    TradeoffCurve,
    TradeoffStrategy,
    equal_capacity_point,
    improvement,
    improvement_summary,
    tradeoff_curve,
)
from comparative_alloc.utils.io import write_csv, write_json
from comparative_alloc.utils.misc import ExitStatus
from comparative_alloc.utils.timing import Timing
from comparative_alloc.utils.typing import Config, StatusCode, UserId
from comparative_alloc.utils.utils import debug_log_every_n, log, seed_suffixed

CURVES_CSV = "curves.csv"
CURVES_JSON = "curves.json"
IMPROVEMENT_CSV = "improvement.csv"
IMPROVEMENT_SUMMARY = "improvement_summary.json"
IMPROVEMENT_COLUMNS = [
    "seed",
    "ca_bps",
    "anti_ca_bps",
    "random_bps",
    "improvement_vs_anti_ca_pct",
    "improvement_vs_random_pct",
]


def check_endpoints(curve: TradeoffCurve, full_channel: Dict[UserId, float], user1: UserId, user2: UserId) -> None:
    if curve.c1[0] != 0.0 or curve.c2[-1] != 0.0:
        raise InvariantViolation(f"{curve.strategy_label.value} curve does not start and end at zero capacity")
    if curve.c1[-1] != full_channel[user1] or curve.c2[0] != full_channel[user2]:
        raise InvariantViolation(
            f"{curve.strategy_label.value} curve endpoints ({curve.c1[-1]}, {curve.c2[0]}) differ from the "
            f"full-channel capacities ({full_channel[user1]}, {full_channel[user2]})"
        )


def curves_for_seed(
    cfg: Config, scenario: Scenario, seed: int, full_channel: Dict[UserId, float]
) -> Dict[TradeoffStrategy, TradeoffCurve]:
    block1, block2 = scenario.blocks
    noise1, noise2 = scenario.noise[scenario.users[0]], scenario.noise[scenario.users[1]]

    curves = {}
    for name in cfg.strategies:
        strategy = TradeoffStrategy.parse(name)
        curve = tradeoff_curve(
            block1,
            block2,
            scenario.loading,
            noise1,
            noise2,
            scenario.grid,
            strategy,
            seed=seed,
            trials=cfg.random_trials,
        )
        check_endpoints(curve, full_channel, scenario.users[0], scenario.users[1])
        curves[strategy] = curve
    return curves


def improvement_row(seed: int, curves: Dict[TradeoffStrategy, TradeoffCurve]) -> Dict:
    row = {c: np.nan for c in IMPROVEMENT_COLUMNS}
    row["seed"] = seed
    for strategy, column in (
        (TradeoffStrategy.CA, "ca_bps"),
        (TradeoffStrategy.ANTI_CA, "anti_ca_bps"),
        (TradeoffStrategy.RANDOM, "random_bps"),
    ):
        if strategy in curves:
            row[column] = equal_capacity_point(curves[strategy]).throughput

    ca = curves.get(TradeoffStrategy.CA)
    if ca is not None:
        if TradeoffStrategy.ANTI_CA in curves:
            row["improvement_vs_anti_ca_pct"] = improvement(ca, curves[TradeoffStrategy.ANTI_CA])
        if TradeoffStrategy.RANDOM in curves:
            row["improvement_vs_random_pct"] = improvement(ca, curves[TradeoffStrategy.RANDOM])
    return row


def _curves_report(
    curves: Dict[TradeoffStrategy, TradeoffCurve], row: Dict, full_channel: Dict[UserId, float]
) -> Dict:
    strategies = {}
    for strategy, curve in curves.items():
        d = curve.to_dict()
        point = equal_capacity_point(curve)
        d["equal_capacity"] = {"throughput_bps": point.throughput, "k": point.k}
        strategies[strategy.value] = d

    improvements = {k: row[k] for k in ("improvement_vs_anti_ca_pct", "improvement_vs_random_pct")}
    return {
        "seed": row["seed"],
        "strategies": strategies,
        "improvements": {k: v for k, v in improvements.items() if not np.isnan(v)},
        "full_channel_bps": {str(u): c for u, c in full_channel.items()},
    }


def cmd_curve(cfg: Config) -> StatusCode:
    digest = init_run(cfg)
    timing = Timing("curve")

    num_seeds = cfg.num_channel_seeds
    if cfg.channel_source == "trace" and num_seeds > 1:
        log.warning("A trace is a single channel realization, ignoring --num_channel_seeds=%d", num_seeds)
        num_seeds = 1

    rows: List[Dict] = []
    for offset in range(num_seeds):
        seed = cfg.seed + offset
        with timing.add_time("channels"):
            scenario = make_scenario(cfg, offset)
        if scenario.num_users != 2:
            raise ValidationError(f"Tradeoff curves compare two users, the scenario has {scenario.num_users}")

        with timing.add_time("curves"):
            full_channel = full_channel_capacities(scenario.blocks, scenario.loading, scenario.noise, scenario.grid)
            curves = curves_for_seed(cfg, scenario, seed, full_channel)

        row = improvement_row(seed, curves)
        rows.append(row)

        with timing.time_avg("write"):
            frame = pd.concat([c.to_frame() for c in curves.values()], ignore_index=True)
            write_csv(frame, join(cfg.out, seed_suffixed(CURVES_CSV, seed)), digest)
            report = _curves_report(curves, row, full_channel)
            write_json(report, join(cfg.out, seed_suffixed(CURVES_JSON, seed)), digest)

        debug_log_every_n(
            10,
            "Seed %d: equal-capacity improvement vs anti-CA %.2f%%, vs random %.2f%%",
            seed,
            row["improvement_vs_anti_ca_pct"],
            row["improvement_vs_random_pct"],
        )

    improvements = pd.DataFrame(rows, columns=IMPROVEMENT_COLUMNS)
    write_csv(improvements, join(cfg.out, IMPROVEMENT_CSV), digest)

    summary = {}
    for baseline in ("anti_ca", "random"):
        values = improvements[f"improvement_vs_{baseline}_pct"].dropna()
        if len(values) > 0:
            summary[f"vs_{baseline}"] = improvement_summary(values.to_numpy())
            log.info(
                "Improvement over %s on %d seeds: median %.2f%%, range [%.2f%%, %.2f%%]",
                baseline,
                len(values),
                summary[f"vs_{baseline}"]["median"],
                summary[f"vs_{baseline}"]["min"],
                summary[f"vs_{baseline}"]["max"],
            )
    write_json(summary, join(cfg.out, IMPROVEMENT_SUMMARY), digest)

    log.debug(timing)
    return ExitStatus.SUCCESS
