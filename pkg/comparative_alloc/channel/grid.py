from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from comparative_alloc.utils.misc import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_CENTER_FREQUENCY,
    DEFAULT_SUBCARRIER_COUNT,
    DEFAULT_SUBCARRIER_SPACING,
)


@dataclass(frozen=True)
class ResourceGrid:
    """Subcarrier grid of a multi-tone channel, grouped into resource blocks of `block_size` adjacent subcarriers."""

    subcarrier_count: int = DEFAULT_SUBCARRIER_COUNT
    subcarrier_spacing: float = DEFAULT_SUBCARRIER_SPACING  # Hz
    block_size: int = DEFAULT_BLOCK_SIZE
    center_frequency: float = DEFAULT_CENTER_FREQUENCY  # Hz, metadata only

    def __post_init__(self):
        if int(self.subcarrier_count) != self.subcarrier_count or self.subcarrier_count <= 0:
            raise ValueError(f"subcarrier_count must be a positive integer, got {self.subcarrier_count}")
        if int(self.block_size) != self.block_size or self.block_size <= 0:
            raise ValueError(f"block_size must be a positive integer, got {self.block_size}")
        if not self.subcarrier_spacing > 0:
            raise ValueError(f"subcarrier_spacing must be positive, got {self.subcarrier_spacing}")
        if self.subcarrier_count % self.block_size != 0:
            raise ValueError(f"{self.subcarrier_count=} is not a multiple of {self.block_size=}")

    @property
    def block_count(self) -> int:
        return self.subcarrier_count // self.block_size

    @property
    def bandwidth(self) -> float:
        return self.subcarrier_count * self.subcarrier_spacing

    @property
    def block_bandwidth(self) -> float:
        return self.block_size * self.subcarrier_spacing

    def baseband_offsets(self) -> np.ndarray:
        """Subcarrier frequencies relative to the channel centre, in Hz."""
        i = np.arange(self.subcarrier_count, dtype=np.float64)
        return (i - (self.subcarrier_count - 1) / 2.0) * self.subcarrier_spacing

    def subcarriers_of_block(self, block_index: int) -> slice:
        start = block_index * self.block_size
        return slice(start, start + self.block_size)
