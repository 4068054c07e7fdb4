"""
Capacity tradeoff between two users sharing a channel: for every split k, user 1 owns k blocks and user 2 the rest.
Comparing curves at the point where both users get the same capacity is the headline metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from comparative_alloc.alloc.ranking import rank_by_ratio
from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.response import BlockResponse, PowerLoading, UserNoise
from comparative_alloc.metrics.capacity import owned_capacity, user_efficiencies
from comparative_alloc.utils.utils import derive_seed, log, make_rng

CURVE_COLUMNS = ["strategy", "k", "c1_bps", "c2_bps"]


class TradeoffStrategy(str, Enum):
    # user 1 owns the top-k blocks of the channel-response ranking
    CA = "ca"
    # user 1 owns the bottom-k blocks, the worst case
    ANTI_CA = "anti_ca"
    # mean over seeded uniform k-subsets
    RANDOM = "random_mean"

    @classmethod
    def parse(cls, name: str) -> TradeoffStrategy:
        return cls.RANDOM if name == "random" else cls(name)


@dataclass(frozen=True, eq=False)
class TradeoffCurve:
    strategy_label: TradeoffStrategy
    k: np.ndarray
    c1: np.ndarray  # bit/s
    c2: np.ndarray
    # random strategy only: per-k envelope over trials and standard error of the mean
    c1_min: Optional[np.ndarray] = None
    c1_max: Optional[np.ndarray] = None
    c2_min: Optional[np.ndarray] = None
    c2_max: Optional[np.ndarray] = None
    c1_sem: Optional[np.ndarray] = None
    trials: int = 0

    @property
    def block_count(self) -> int:
        return len(self.k) - 1

    @property
    def points(self):
        return [(int(k), float(c1), float(c2)) for k, c1, c2 in zip(self.k, self.c1, self.c2)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"strategy": self.strategy_label.value, "k": self.k, "c1_bps": self.c1, "c2_bps": self.c2},
            columns=CURVE_COLUMNS,
        )

    def to_dict(self) -> Dict:
        d = {"strategy": self.strategy_label.value, "points": self.points}
        if self.trials:
            d["trials"] = self.trials
            d["envelope"] = {
                "c1_min_bps": self.c1_min.tolist(),
                "c1_max_bps": self.c1_max.tolist(),
                "c2_min_bps": self.c2_min.tolist(),
                "c2_max_bps": self.c2_max.tolist(),
            }
        return d


@dataclass(frozen=True)
class EqualCapacityPoint:
    throughput: float  # bit/s per user at the crossing
    k: float  # interpolated split index


def _split_curve(eta1: np.ndarray, eta2: np.ndarray, order: np.ndarray, block_bandwidth: float):
    num_blocks = len(order)
    c1, c2 = np.empty(num_blocks + 1), np.empty(num_blocks + 1)
    mask = np.zeros(num_blocks, dtype=bool)
    for k in range(num_blocks + 1):
        if k > 0:
            mask[order[k - 1]] = True
        c1[k] = owned_capacity(eta1, mask, block_bandwidth)
        c2[k] = owned_capacity(eta2, ~mask, block_bandwidth)
    return c1, c2


def _random_curves(eta1, eta2, block_bandwidth: float, seed: int, trials: int):
    num_blocks = len(eta1)
    c1 = np.zeros((trials, num_blocks + 1))
    c2 = np.zeros((trials, num_blocks + 1))
    for t in range(trials):
        # prefixes of a uniform permutation are uniform k-subsets for every k
        perm = make_rng(derive_seed(seed, t)).permutation(num_blocks)
        c1[t, 1:] = block_bandwidth * np.cumsum(eta1[perm])
        c2[t, :-1] = block_bandwidth * np.cumsum(eta2[perm][::-1])[::-1]
    return c1, c2


def tradeoff_curve(
    block1: BlockResponse,
    block2: BlockResponse,
    loading: PowerLoading,
    noise1: UserNoise,
    noise2: UserNoise,
    grid: ResourceGrid,
    strategy: TradeoffStrategy,
    seed: int = 0,
    trials: int = 200,
) -> TradeoffCurve:
    strategy = TradeoffStrategy.parse(strategy) if isinstance(strategy, str) else strategy
    efficiencies = user_efficiencies([block1, block2], loading, [noise1, noise2])
    eta1, eta2 = efficiencies[block1.user_id], efficiencies[block2.user_id]
    bandwidth = grid.block_bandwidth
    num_blocks = grid.block_count
    k = np.arange(num_blocks + 1)

    if strategy in (TradeoffStrategy.CA, TradeoffStrategy.ANTI_CA):
        order = rank_by_ratio(block1.magnitudes, block2.magnitudes).order
        if strategy == TradeoffStrategy.ANTI_CA:
            order = order[::-1]
        c1, c2 = _split_curve(eta1, eta2, order, bandwidth)
        return TradeoffCurve(strategy, k, c1, c2)

    if trials < 2:
        raise ValueError(f"Random tradeoff curve needs at least 2 trials, got {trials}")

    c1_trials, c2_trials = _random_curves(eta1, eta2, bandwidth, seed, trials)

    # the endpoints do not depend on the draw, pin them to the exact full-channel capacities
    everything = np.ones(num_blocks, dtype=bool)
    full1, full2 = owned_capacity(eta1, everything, bandwidth), owned_capacity(eta2, everything, bandwidth)
    c1_trials[:, 0], c1_trials[:, -1] = 0.0, full1
    c2_trials[:, 0], c2_trials[:, -1] = full2, 0.0

    log.debug("Random tradeoff curve over %d trials, seed %d", trials, seed)
    return TradeoffCurve(
        strategy,
        k,
        c1_trials.mean(axis=0),
        c2_trials.mean(axis=0),
        c1_min=c1_trials.min(axis=0),
        c1_max=c1_trials.max(axis=0),
        c2_min=c2_trials.min(axis=0),
        c2_max=c2_trials.max(axis=0),
        c1_sem=c1_trials.std(axis=0, ddof=1) / np.sqrt(trials),
        trials=trials,
    )


def equal_capacity_point(curve: TradeoffCurve) -> EqualCapacityPoint:
    """Linear interpolation between the two split indices that bracket c1 = c2."""
    diff = curve.c1 - curve.c2
    # diff[0] = -C2 <= 0 and diff[-1] = C1 >= 0, so a crossing always exists
    crossing = int(np.argmax(diff >= 0))
    if diff[crossing] == 0 or crossing == 0:
        return EqualCapacityPoint(float(curve.c1[crossing]), float(crossing))

    d0, d1 = diff[crossing - 1], diff[crossing]
    t = -d0 / (d1 - d0)
    c1_lo, c1_hi = curve.c1[crossing - 1], curve.c1[crossing]
    throughput = c1_lo + t * (c1_hi - c1_lo)
    return EqualCapacityPoint(float(throughput), float(crossing - 1 + t))


def improvement(ca_curve: TradeoffCurve, baseline_curve: TradeoffCurve) -> float:
    """Percentage gain of the equal-capacity throughput over the baseline curve."""
    if ca_curve.block_count != baseline_curve.block_count:
        raise ValueError("Curves must be computed over the same grid")

    t_ca = equal_capacity_point(ca_curve).throughput
    t_base = equal_capacity_point(baseline_curve).throughput
    if t_base == 0:
        if t_ca == 0:
            return 0.0
        raise ValueError("Baseline throughput is zero, improvement is undefined")
    return 100.0 * (t_ca - t_base) / t_base


def improvement_summary(values: Sequence[float]) -> Dict[str, float]:
    values = np.asarray(values, dtype=np.float64)
    if len(values) == 0:
        return {"count": 0}
    return {
        "count": int(len(values)),
        "mean": float(values.mean()),
        "median": float(np.median(values)),
        "min": float(values.min()),
        "max": float(values.max()),
        "std": float(values.std(ddof=1)) if len(values) > 1 else 0.0,
        "positive": int(np.count_nonzero(values > 0)),
    }
