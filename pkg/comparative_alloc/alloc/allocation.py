from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from comparative_alloc.alloc.ranking import RatioRanking, ThresholdPartition
from comparative_alloc.utils.typing import UserId


@dataclass(frozen=True, eq=False)
class Allocation:
    """Owner of every resource block plus the per-user demand shortfall."""

    owners: Tuple[UserId, ...]
    unmet_demand: Dict[UserId, int] = field(default_factory=dict)
    # the threshold split that produced the allocation, if any (top-level split for multi-user runs)
    partition: Optional[ThresholdPartition] = None
    ranking: Optional[RatioRanking] = None

    def __post_init__(self):
        object.__setattr__(self, "owners", tuple(self.owners))
        if any(owner is None for owner in self.owners):
            raise ValueError("Every block must have an owner")

    @property
    def block_count(self) -> int:
        return len(self.owners)

    def users(self) -> Tuple[UserId, ...]:
        return tuple(dict.fromkeys(self.owners))

    def mask_of(self, user: UserId) -> np.ndarray:
        return np.fromiter((owner == user for owner in self.owners), dtype=bool, count=len(self.owners))

    def blocks_of(self, user: UserId) -> np.ndarray:
        return np.flatnonzero(self.mask_of(user))

    def count_of(self, user: UserId) -> int:
        return sum(1 for owner in self.owners if owner == user)

    def to_dict(self) -> Dict:
        return {
            "owners": {str(block): str(owner) for block, owner in enumerate(self.owners)},
            "unmet_demand": {str(user): int(shortfall) for user, shortfall in self.unmet_demand.items()},
        }


def allocation_from_mask(user1_mask: np.ndarray, user1: UserId, user2: UserId) -> Allocation:
    return Allocation(tuple(user1 if is_user1 else user2 for is_user1 in user1_mask))


def allocation_from_split(order: Sequence[int], k: int, user1: UserId, user2: UserId) -> Allocation:
    """User 1 owns the first k blocks of `order`, user 2 owns the rest."""
    order = np.asarray(order)
    if not 0 <= k <= len(order):
        raise ValueError(f"Split index {k} outside [0, {len(order)}]")

    mask = np.zeros(len(order), dtype=bool)
    mask[order[:k]] = True
    return allocation_from_mask(mask, user1, user2)
