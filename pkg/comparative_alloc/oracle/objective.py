from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from comparative_alloc.alloc.allocation import Allocation, allocation_from_mask
from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.metrics.capacity import owned_capacity
from comparative_alloc.utils.typing import UserId


@dataclass(frozen=True, eq=False)
class OracleResult:
    allocation: Allocation
    objective: float  # sum capacity, bit/s when the block bandwidth is given in Hz
    method_label: str
    user1_blocks: Tuple[int, ...]
    evaluated: int = 0  # number of candidate splits looked at


def user_ids(eta1: SpectralEfficiencyVector, eta2: SpectralEfficiencyVector) -> Tuple[UserId, UserId]:
    user1 = eta1.user_id if eta1.user_id is not None else "1"
    user2 = eta2.user_id if eta2.user_id is not None else "2"
    return user1, user2


def check_split(eta1: SpectralEfficiencyVector, eta2: SpectralEfficiencyVector, k: int) -> int:
    if len(eta1) != len(eta2):
        raise ValueError(f"Spectral efficiency vectors differ in length: {len(eta1)} vs {len(eta2)}")
    num_blocks = len(eta1)
    if not 0 <= k <= num_blocks:
        raise ValueError(f"Split k={k} outside [0, {num_blocks}]")
    return num_blocks


def split_objective(eta1: np.ndarray, eta2: np.ndarray, user1_mask: np.ndarray, block_bandwidth: float) -> float:
    """Sum capacity of a two-user split, summed exactly the way `capacity(...).total` sums it."""
    per_user = (
        owned_capacity(eta1, user1_mask, block_bandwidth),
        owned_capacity(eta2, ~user1_mask, block_bandwidth),
    )
    return sum(per_user)


def make_result(
    eta1: SpectralEfficiencyVector,
    eta2: SpectralEfficiencyVector,
    user1_mask: np.ndarray,
    objective: float,
    method_label: str,
    evaluated: int = 0,
) -> OracleResult:
    user1, user2 = user_ids(eta1, eta2)
    return OracleResult(
        allocation=allocation_from_mask(user1_mask, user1, user2),
        objective=objective,
        method_label=method_label,
        user1_blocks=tuple(int(i) for i in np.flatnonzero(user1_mask)),
        evaluated=evaluated,
    )
