from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from comparative_alloc.errors import DegenerateChannelError, InvariantViolation
from comparative_alloc.utils.misc import DEFAULT_THRESHOLD
from comparative_alloc.utils.typing import ArrayLike
from comparative_alloc.utils.utils import log


class AdvantageMode(str, Enum):
    # ratios of spectral efficiencies, depend on power loading and noise
    EFFICIENCY_RATIO = "efficiency_ratio"
    # ratios of channel magnitudes |h1/h2|, loading cancels out
    CHANNEL_RESPONSE = "channel_response"


@dataclass(frozen=True)
class ThresholdConfig:
    threshold: float = DEFAULT_THRESHOLD
    mode: AdvantageMode = AdvantageMode.CHANNEL_RESPONSE

    def __post_init__(self):
        if not self.threshold >= 1.0:
            raise ValueError(f"Comparative advantage threshold must be >= 1, got {self.threshold}")
        object.__setattr__(self, "mode", AdvantageMode(self.mode))


def _readonly(x: np.ndarray) -> np.ndarray:
    x.setflags(write=False)
    return x


@dataclass(frozen=True, eq=False)
class RatioRanking:
    """
    Blocks sorted by descending advantage ratio a_i / b_i of user 1 over user 2.
    `ratios` and `inverse_ratios` (b_i / a_i) are aligned with `order`. Ties keep ascending block index.
    """

    order: np.ndarray
    ratios: np.ndarray
    inverse_ratios: np.ndarray

    def __len__(self):
        return len(self.order)

    @property
    def block_count(self) -> int:
        return len(self.order)

    def ratio_of_block(self) -> np.ndarray:
        by_block = np.empty(len(self.order))
        by_block[self.order] = self.ratios
        return by_block

    def inverse_ratio_of_block(self) -> np.ndarray:
        by_block = np.empty(len(self.order))
        by_block[self.order] = self.inverse_ratios
        return by_block

    def swapped(self) -> RatioRanking:
        """Ranking of the same two users with their roles exchanged, identical to rank_by_ratio(b, a)."""
        return _ranking_from_ratios(self.inverse_ratio_of_block(), self.ratio_of_block())


@dataclass(frozen=True, eq=False)
class ThresholdPartition:
    """
    Three-way split of a ranking: the first m ranked blocks go to user 1, the last n to user 2,
    the middle is flexible. Block indices in each set keep ranking order.
    """

    user1_blocks: np.ndarray
    user2_blocks: np.ndarray
    flexible_blocks: np.ndarray
    threshold: float

    @property
    def m(self) -> int:
        return len(self.user1_blocks)

    @property
    def n(self) -> int:
        return len(self.user2_blocks)

    @property
    def flexible_count(self) -> int:
        return len(self.flexible_blocks)

    @property
    def block_count(self) -> int:
        return self.m + self.n + self.flexible_count


def _validate_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.ndim != 1 or b.ndim != 1 or len(a) != len(b):
        raise ValueError(f"Per-block values must be 1-D sequences of equal length, got {a.shape} and {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("Per-block values must be finite")
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("Per-block values must be positive")

    zeros = np.flatnonzero((a == 0) | (b == 0))
    if len(zeros) > 0:
        raise DegenerateChannelError(f"Advantage ratio undefined, zero value on block(s) {zeros[:10].tolist()}")


def _ranking_from_ratios(ratio_by_block: np.ndarray, inverse_by_block: np.ndarray) -> RatioRanking:
    # stable sort of the negated ratios keeps ascending block index among ties
    order = np.argsort(-ratio_by_block, kind="stable")
    return RatioRanking(
        order=_readonly(order),
        ratios=_readonly(ratio_by_block[order]),
        inverse_ratios=_readonly(inverse_by_block[order]),
    )


def rank_by_ratio(a: ArrayLike, b: ArrayLike) -> RatioRanking:
    """Rank blocks by the descending ratio a_i / b_i."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _validate_pair(a, b)
    return _ranking_from_ratios(a / b, b / a)


def select_by_threshold(ranking: RatioRanking, cfg: ThresholdConfig) -> ThresholdPartition:
    """
    m = number of ranked ratios strictly above T, n = number of inverse ratios strictly above T.
    Ratios exactly equal to T stay flexible.
    """
    t = cfg.threshold
    num_blocks = ranking.block_count
    m = int(np.count_nonzero(ranking.ratios > t))
    n = int(np.count_nonzero(ranking.inverse_ratios > t))
    if m + n > num_blocks:
        raise InvariantViolation(f"Threshold sets overlap: m={m} + n={n} exceed {num_blocks} blocks")

    order = ranking.order
    partition = ThresholdPartition(
        user1_blocks=order[:m],
        user2_blocks=order[num_blocks - n :],
        flexible_blocks=order[m : num_blocks - n],
        threshold=t,
    )
    log.debug("Threshold %.3f partition: m=%d, n=%d, flexible=%d", t, m, n, partition.flexible_count)
    return partition
