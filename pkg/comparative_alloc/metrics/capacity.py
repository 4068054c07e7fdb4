from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Union

import numpy as np

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.efficiency import spectral_efficiency
from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.response import BlockResponse, PowerLoading, UserNoise, snr
from comparative_alloc.utils.typing import UserId


@dataclass(frozen=True)
class CapacityReport:
    per_user: Dict[UserId, float]  # bit/s
    total: float

    def to_dict(self) -> Dict:
        return {"per_user_bps": {str(u): c for u, c in self.per_user.items()}, "total_bps": self.total}


def owned_capacity(eta: np.ndarray, mask: np.ndarray, block_bandwidth: float) -> float:
    """
    Shannon capacity over the blocks selected by `mask`. Every capacity in the package goes through here so that
    the same block set always sums in the same order and gives bit-identical results.
    """
    return block_bandwidth * float(np.sum(eta[mask]))


def _by_user(items: Union[Mapping, Sequence]) -> Dict:
    if isinstance(items, Mapping):
        return dict(items)
    return {item.user_id: item for item in items}


def user_efficiencies(
    blocks: Union[Mapping[UserId, BlockResponse], Sequence[BlockResponse]],
    loading: PowerLoading,
    noise: Union[Mapping[UserId, UserNoise], Sequence[UserNoise]],
) -> Dict[UserId, np.ndarray]:
    blocks, noise = _by_user(blocks), _by_user(noise)
    missing = set(blocks) - set(noise)
    if missing:
        raise ValueError(f"No noise power given for users {sorted(map(str, missing))}")
    return {user: spectral_efficiency(snr(block, loading, noise[user]), user).eta for user, block in blocks.items()}


def capacity(
    alloc: Allocation,
    blocks: Union[Mapping[UserId, BlockResponse], Sequence[BlockResponse]],
    loading: PowerLoading,
    noise: Union[Mapping[UserId, UserNoise], Sequence[UserNoise]],
    grid: ResourceGrid,
) -> CapacityReport:
    """C_u = sum over blocks owned by u of (block_size * spacing) * log2(1 + gamma_{u,i})."""
    if alloc.block_count != grid.block_count:
        raise ValueError(f"Allocation covers {alloc.block_count} blocks, the grid has {grid.block_count}")

    efficiencies = user_efficiencies(blocks, loading, noise)
    strangers = set(alloc.users()) - set(efficiencies)
    if strangers:
        raise ValueError(f"Blocks owned by users without a channel response: {sorted(map(str, strangers))}")

    per_user = {
        user: owned_capacity(eta, alloc.mask_of(user), grid.block_bandwidth) for user, eta in efficiencies.items()
    }
    return CapacityReport(per_user, sum(per_user.values()))


def full_channel_capacities(
    blocks: Union[Mapping[UserId, BlockResponse], Sequence[BlockResponse]],
    loading: PowerLoading,
    noise: Union[Mapping[UserId, UserNoise], Sequence[UserNoise]],
    grid: ResourceGrid,
) -> Dict[UserId, float]:
    """Capacity of every user owning the whole channel, the endpoints of all tradeoff curves."""
    everything = np.ones(grid.block_count, dtype=bool)
    efficiencies = user_efficiencies(blocks, loading, noise)
    return {user: owned_capacity(eta, everything, grid.block_bandwidth) for user, eta in efficiencies.items()}
