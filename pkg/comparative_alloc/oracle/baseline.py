from __future__ import annotations

from comparative_alloc.alloc.allocation import Allocation, allocation_from_split
from comparative_alloc.utils.typing import UserId
from comparative_alloc.utils.utils import make_rng


def random_allocation(block_count: int, k: int, seed: int, user1: UserId = "1", user2: UserId = "2") -> Allocation:
    """Uniform random k-subset of blocks for user 1, deterministic per seed."""
    if not 0 <= k <= block_count:
        raise ValueError(f"Split k={k} outside [0, {block_count}]")
    perm = make_rng(seed).permutation(block_count)
    return allocation_from_split(perm, k, user1, user2)
