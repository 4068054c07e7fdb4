from __future__ import annotations

from typing import Dict, Optional, Tuple

import numpy as np

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.efficiency import spectral_efficiency
from comparative_alloc.alloc.ranking import (
    AdvantageMode,
    RatioRanking,
    ThresholdConfig,
    ThresholdPartition,
    rank_by_ratio,
    select_by_threshold,
)
from comparative_alloc.channel.response import BlockResponse, PowerLoading, UserNoise, snr
from comparative_alloc.utils.typing import Demand, UserId
from comparative_alloc.utils.utils import log


def check_same_grid(*blocks: BlockResponse) -> None:
    grid = blocks[0].grid
    for block in blocks[1:]:
        if block.grid != grid:
            raise ValueError(f"Users {blocks[0].user_id} and {block.user_id} are on different grids")


def two_user_ranking(
    block1: BlockResponse,
    block2: BlockResponse,
    mode: AdvantageMode = AdvantageMode.CHANNEL_RESPONSE,
    loading: Optional[PowerLoading] = None,
    noise1: Optional[UserNoise] = None,
    noise2: Optional[UserNoise] = None,
) -> RatioRanking:
    """
    Channel-response mode ranks |h1| / |h2| and ignores loading and noise.
    Efficiency-ratio mode ranks eta1 / eta2 at the given operating point (unit loading and noise by default).
    """
    check_same_grid(block1, block2)
    if AdvantageMode(mode) == AdvantageMode.CHANNEL_RESPONSE:
        return rank_by_ratio(block1.magnitudes, block2.magnitudes)

    grid = block1.grid
    loading = loading if loading is not None else PowerLoading.flat(1.0, grid.block_count)
    noise1 = noise1 if noise1 is not None else UserNoise(block1.user_id, 1.0)
    noise2 = noise2 if noise2 is not None else UserNoise(block2.user_id, 1.0)
    eta1 = spectral_efficiency(snr(block1, loading, noise1), block1.user_id)
    eta2 = spectral_efficiency(snr(block2, loading, noise2), block2.user_id)
    return rank_by_ratio(eta1.eta, eta2.eta)


def split_flexible(
    flexible: np.ndarray, count1: int, count2: int, weight1: float = 1.0, weight2: float = 1.0
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Hand out ranked flexible blocks so that block counts approach the weight ratio.
    Side 1 takes from the top of the ranking, side 2 from the bottom; ties go to side 1.
    """
    lo, hi = 0, len(flexible)
    while lo < hi:
        # count1 / weight1 <= count2 / weight2
        if count1 * weight2 <= count2 * weight1:
            lo += 1
            count1 += 1
        else:
            hi -= 1
            count2 += 1

    return flexible[:lo], flexible[lo:]


def _demand_counts(demand: Optional[Demand], user1: UserId, user2: UserId, num_blocks: int) -> Dict[UserId, int]:
    if not demand:
        return {}

    unknown = set(demand) - {user1, user2}
    if unknown:
        raise ValueError(f"Demand given for unknown users {sorted(map(str, unknown))}")

    counts = {user: int(demand.get(user, 0)) for user in (user1, user2)}
    if any(c < 0 for c in counts.values()):
        raise ValueError(f"Demand must be non-negative, got {counts}")
    if sum(counts.values()) > num_blocks:
        raise ValueError(f"Total demand {sum(counts.values())} exceeds {num_blocks} blocks")
    return counts


def finalize_two_user(
    partition: ThresholdPartition,
    user1: UserId,
    user2: UserId,
    demand: Optional[Demand] = None,
    ranking: Optional[RatioRanking] = None,
) -> Allocation:
    """
    Threshold sets are hard. Flexible blocks first serve unmet demand (user 1 from the top of the ranking, user 2
    from the bottom), whatever is left is split to balance block counts.
    """
    num_blocks = partition.block_count
    demand_counts = _demand_counts(demand, user1, user2, num_blocks)

    flexible = partition.flexible_blocks
    count1, count2 = partition.m, partition.n

    take1 = take2 = 0
    if demand_counts:
        take1 = min(max(0, demand_counts[user1] - count1), len(flexible))
        take2 = min(max(0, demand_counts[user2] - count2), len(flexible) - take1)

    middle = flexible[take1 : len(flexible) - take2]
    to1, to2 = split_flexible(middle, count1 + take1, count2 + take2)

    owners = np.empty(num_blocks, dtype=object)
    owners[partition.user1_blocks] = user1
    owners[flexible[:take1]] = user1
    owners[to1] = user1
    owners[to2] = user2
    owners[flexible[len(flexible) - take2 :]] = user2
    owners[partition.user2_blocks] = user2

    allocation_counts = {user1: int(np.count_nonzero(owners == user1)), user2: int(np.count_nonzero(owners == user2))}
    unmet = {}
    for user, wanted in demand_counts.items():
        if wanted > allocation_counts[user]:
            unmet[user] = wanted - allocation_counts[user]

    if unmet:
        log.debug("Demand not met without breaking threshold sets: %r", unmet)

    return Allocation(tuple(owners), unmet, partition, ranking)


def allocate_two_user(
    block1: BlockResponse,
    block2: BlockResponse,
    cfg: ThresholdConfig,
    demand: Optional[Demand] = None,
    loading: Optional[PowerLoading] = None,
    noise1: Optional[UserNoise] = None,
    noise2: Optional[UserNoise] = None,
) -> Allocation:
    ranking = two_user_ranking(block1, block2, cfg.mode, loading, noise1, noise2)
    partition = select_by_threshold(ranking, cfg)
    return finalize_two_user(partition, block1.user_id, block2.user_id, demand, ranking)
