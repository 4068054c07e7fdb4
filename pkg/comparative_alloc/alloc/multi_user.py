"""
Multi-user extension: users are split into two groups, the groups compete for blocks through their average
(geometric mean) responses exactly like two users do, and each group repeats the procedure on the blocks it won
until every group holds a single user. Each level sorts at most N blocks in total, so U users cost O(U N log N).
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from scipy.stats import gmean

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.clustering import ClusteringStrategy, cluster_indices
from comparative_alloc.alloc.ranking import (
    AdvantageMode,
    RatioRanking,
    ThresholdConfig,
    ThresholdPartition,
    rank_by_ratio,
    select_by_threshold,
)
from comparative_alloc.alloc.two_user import check_same_grid, split_flexible
from comparative_alloc.channel.response import BlockResponse
from comparative_alloc.utils.utils import derive_seed, log


def group_response(magnitudes: np.ndarray) -> np.ndarray:
    """
    Per-block geometric mean over the group's users (rows). The ratio of two groups' geometric means is the
    geometric mean of the member ratios, so the comparison keeps its comparative-advantage meaning.
    """
    if len(magnitudes) == 1:
        return magnitudes[0]
    return gmean(magnitudes, axis=0)


class _Recursion:
    def __init__(self, magnitudes: np.ndarray, user_ids, cfg: ThresholdConfig, strategy: ClusteringStrategy):
        self.magnitudes = magnitudes
        self.log_magnitudes = np.log(magnitudes)
        self.user_ids = user_ids
        self.cfg = cfg
        self.strategy = strategy
        self.owners = np.empty(magnitudes.shape[1], dtype=object)
        self.top_partition: Optional[ThresholdPartition] = None
        self.top_ranking: Optional[RatioRanking] = None
        self.levels = 0

    def run(self, users: np.ndarray, blocks: np.ndarray, seed: int, depth: int) -> None:
        self.levels = max(self.levels, depth + 1)

        if len(users) == 1:
            self.owners[blocks] = self.user_ids[users[0]]
            return
        if len(blocks) == 0:
            return

        local1, local2 = cluster_indices(self.log_magnitudes[np.ix_(users, blocks)], self.strategy, seed)
        users1, users2 = users[local1], users[local2]

        response1 = group_response(self.magnitudes[np.ix_(users1, blocks)])
        response2 = group_response(self.magnitudes[np.ix_(users2, blocks)])
        ranking = rank_by_ratio(response1, response2)
        partition = select_by_threshold(ranking, self.cfg)

        to1, to2 = split_flexible(partition.flexible_blocks, partition.m, partition.n, len(users1), len(users2))
        blocks1 = np.sort(blocks[np.concatenate([partition.user1_blocks, to1])])
        blocks2 = np.sort(blocks[np.concatenate([to2, partition.user2_blocks])])

        if depth == 0:
            self.top_partition = partition
            self.top_ranking = ranking

        log.debug(
            "Level %d: %d vs %d users, %d blocks -> %d / %d (m=%d, n=%d)",
            depth,
            len(users1),
            len(users2),
            len(blocks),
            len(blocks1),
            len(blocks2),
            partition.m,
            partition.n,
        )

        self.run(users1, blocks1, derive_seed(seed, 1), depth + 1)
        self.run(users2, blocks2, derive_seed(seed, 2), depth + 1)


def allocate_multi_user(
    responses: Sequence[BlockResponse],
    cfg: ThresholdConfig,
    strategy: ClusteringStrategy = ClusteringStrategy.RESPONSE_BASED,
    seed: int = 0,
) -> Allocation:
    """
    Recursive comparative-advantage allocation for any number of users. Group-level flexible blocks are finalized
    in proportion to group sizes before recursing, and the same threshold applies at every level.
    """
    if len(responses) == 0:
        raise ValueError("Need at least one user to allocate blocks to")
    check_same_grid(*responses)

    if cfg.mode != AdvantageMode.CHANNEL_RESPONSE:
        log.warning("Multi-user allocation compares group channel responses, ignoring mode=%s", cfg.mode.value)

    magnitudes = np.stack([r.magnitudes for r in responses])
    user_ids = [r.user_id for r in responses]
    if len(set(user_ids)) != len(user_ids):
        raise ValueError(f"User ids must be unique, got {user_ids}")

    recursion = _Recursion(magnitudes, user_ids, cfg, ClusteringStrategy(strategy))
    num_blocks = magnitudes.shape[1]
    recursion.run(np.arange(len(responses)), np.arange(num_blocks), seed, depth=0)

    log.debug("Multi-user allocation of %d users finished in %d levels", len(responses), recursion.levels)
    return Allocation(tuple(recursion.owners), {}, recursion.top_partition, recursion.top_ranking)
