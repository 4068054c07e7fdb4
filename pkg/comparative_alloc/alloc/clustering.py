from __future__ import annotations

import math
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from comparative_alloc.channel.response import BlockResponse
from comparative_alloc.utils.utils import make_rng


class ClusteringStrategy(str, Enum):
    RANDOM = "random"
    RESPONSE_BASED = "response_based"


def _anchored_groups(log_magnitudes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    num_users = len(log_magnitudes)
    distances = squareform(pdist(log_magnitudes, metric="euclidean"))

    # the most distant pair are the anchors, first such pair in row-major order
    upper = np.triu(distances, k=1)
    anchor1, anchor2 = np.unravel_index(np.argmax(upper), upper.shape)
    if anchor1 == anchor2:
        anchor1, anchor2 = 0, 1

    to_anchors = cdist(log_magnitudes, log_magnitudes[[anchor1, anchor2]], metric="euclidean")
    in_group1 = to_anchors[:, 0] <= to_anchors[:, 1]
    in_group1[anchor1], in_group1[anchor2] = True, False

    users = np.arange(num_users)
    return users[in_group1], users[~in_group1]


def _random_groups(num_users: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    perm = make_rng(seed).permutation(num_users)
    half = math.ceil(num_users / 2)
    group1, group2 = np.sort(perm[:half]), np.sort(perm[half:])
    # larger half first, equal halves ordered by their lowest user
    if len(group1) == len(group2) and group2[0] < group1[0]:
        group1, group2 = group2, group1
    return group1, group2


def cluster_indices(
    log_magnitudes: np.ndarray, strategy: ClusteringStrategy, seed: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """Split users (rows of per-block log magnitudes) into two non-empty groups of row indices."""
    num_users = len(log_magnitudes)
    if num_users < 2:
        raise ValueError(f"Clustering needs at least 2 users, got {num_users}")

    if ClusteringStrategy(strategy) == ClusteringStrategy.RESPONSE_BASED:
        return _anchored_groups(log_magnitudes)
    return _random_groups(num_users, seed)


def cluster_users(
    responses: Sequence[BlockResponse], strategy: ClusteringStrategy, seed: int = 0
) -> Tuple[List[BlockResponse], List[BlockResponse]]:
    """
    response_based: the two users with the most distant log-magnitude vectors anchor the groups, everybody else joins
    the nearer anchor (ties to the first). random: seeded shuffle split at the midpoint, larger half first.
    """
    if len(responses) < 2:
        raise ValueError(f"Clustering needs at least 2 users, got {len(responses)}")

    log_magnitudes = np.log(np.stack([r.magnitudes for r in responses]))
    group1, group2 = cluster_indices(log_magnitudes, strategy, seed)
    return [responses[i] for i in group1], [responses[i] for i in group2]
