from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.errors import DegenerateChannelError
from comparative_alloc.utils.typing import UserId


def _frozen(x: np.ndarray) -> np.ndarray:
    x.setflags(write=False)
    return x


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Complex channel gains h_{u,i} of one user, one per subcarrier of `grid`."""

    user_id: UserId
    gains: np.ndarray
    grid: ResourceGrid

    def __post_init__(self):
        gains = np.array(self.gains, dtype=np.complex128).reshape(-1)
        if len(gains) != self.grid.subcarrier_count:
            raise ValueError(
                f"User {self.user_id}: {len(gains)} gains for a grid of {self.grid.subcarrier_count} subcarriers"
            )
        if not np.all(np.isfinite(gains)):
            raise ValueError(f"User {self.user_id}: channel gains must be finite")
        object.__setattr__(self, "gains", _frozen(gains))

    def magnitude(self) -> np.ndarray:
        return np.abs(self.gains)

    def magnitude_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(self.magnitude())


@dataclass(frozen=True, eq=False)
class BlockResponse:
    """Per-resource-block channel magnitudes of one user."""

    user_id: UserId
    magnitudes: np.ndarray
    grid: ResourceGrid

    def __post_init__(self):
        magnitudes = np.array(self.magnitudes, dtype=np.float64).reshape(-1)
        if len(magnitudes) != self.grid.block_count:
            raise ValueError(
                f"User {self.user_id}: {len(magnitudes)} block magnitudes for a grid of {self.grid.block_count} blocks"
            )
        if not np.all(np.isfinite(magnitudes)):
            raise ValueError(f"User {self.user_id}: block magnitudes must be finite")
        degenerate = np.flatnonzero(magnitudes <= 0)
        if len(degenerate) > 0:
            raise DegenerateChannelError(
                f"User {self.user_id}: zero channel magnitude on block(s) {degenerate[:10].tolist()}, "
                f"floor the magnitudes explicitly if this is intended"
            )
        object.__setattr__(self, "magnitudes", _frozen(magnitudes))

    @property
    def block_count(self) -> int:
        return len(self.magnitudes)

    def magnitude_db(self) -> np.ndarray:
        return 20.0 * np.log10(self.magnitudes)


@dataclass(frozen=True)
class UserNoise:
    user_id: UserId
    noise_power: float  # linear, per subcarrier

    def __post_init__(self):
        if not self.noise_power > 0 or not np.isfinite(self.noise_power):
            raise ValueError(f"User {self.user_id}: noise power must be positive, got {self.noise_power}")


@dataclass(frozen=True, eq=False)
class PowerLoading:
    """Power loading coefficients p_i, either per subcarrier or per block."""

    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.float64).reshape(-1)
        if len(coefficients) == 0:
            raise ValueError("Power loading needs at least one coefficient")
        if not np.all(np.isfinite(coefficients)) or np.any(coefficients <= 0):
            raise ValueError("Power loading coefficients must be positive and finite")
        object.__setattr__(self, "coefficients", _frozen(coefficients))

    @classmethod
    def flat(cls, value: float, length: int) -> PowerLoading:
        return cls(np.full(length, float(value)))

    def per_block(self, grid: ResourceGrid) -> np.ndarray:
        """Coefficients on the block dimension; per-subcarrier loading is averaged over each block."""
        if len(self.coefficients) == grid.block_count:
            return self.coefficients
        if len(self.coefficients) == grid.subcarrier_count:
            return self.coefficients.reshape(grid.block_count, grid.block_size).mean(axis=1)
        raise ValueError(
            f"{len(self.coefficients)} loading coefficients match neither {grid.block_count} blocks "
            f"nor {grid.subcarrier_count} subcarriers"
        )


def aggregate_blocks(response: FrequencyResponse, floor: Optional[float] = None) -> BlockResponse:
    """
    Root-mean-square magnitude of every resource block, so block power equals mean subcarrier power.
    `floor` explicitly lifts block magnitudes below it (deep notches in measured traces), otherwise
    zero-magnitude blocks are rejected.
    """
    grid = response.grid
    power = np.abs(response.gains) ** 2
    block_power = power.reshape(grid.block_count, grid.block_size).mean(axis=1)
    if floor is not None:
        block_power = np.maximum(block_power, float(floor) ** 2)

    degenerate = np.flatnonzero(block_power <= 0)
    if len(degenerate) > 0:
        raise DegenerateChannelError(
            f"User {response.user_id}: blocks {degenerate[:10].tolist()} have zero RMS magnitude"
        )

    return BlockResponse(response.user_id, np.sqrt(block_power), grid)


def snr(block: BlockResponse, loading: PowerLoading, noise: UserNoise) -> np.ndarray:
    """Linear per-block SNR, gamma_{u,i} = p_i |h_{u,i}|^2 / n_u."""
    p = loading.per_block(block.grid)
    return p * block.magnitudes**2 / noise.noise_power

