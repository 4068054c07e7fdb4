"""Translate a configuration into grids, channels, noise and loading for the commands."""

from __future__ import annotations

import math
from dataclasses import dataclass
from os.path import join
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from comparative_alloc.alloc.ranking import AdvantageMode, ThresholdConfig
from comparative_alloc.cfg.arguments import cfg_digest, save_cfg
from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.multipath import MultipathModel, generate_multipath_channel
from comparative_alloc.channel.response import (
    BlockResponse,
    FrequencyResponse,
    PowerLoading,
    UserNoise,
    aggregate_blocks,
)
from comparative_alloc.channel.trace import load_channel_trace
from comparative_alloc.errors import ValidationError
from comparative_alloc.utils.io import read_csv
from comparative_alloc.utils.typing import Config, UserId
from comparative_alloc.utils.utils import init_file_logger, log, output_dir

LOADING_COLUMNS = ["block_index", "coefficient"]
CONFIG_FILENAME = "config.json"


def make_grid(cfg: Config) -> ResourceGrid:
    try:
        return ResourceGrid(
            subcarrier_count=cfg.subcarrier_count,
            subcarrier_spacing=cfg.subcarrier_spacing,
            block_size=cfg.block_size,
            center_frequency=cfg.center_frequency,
        )
    except ValueError as e:
        raise ValidationError(str(e))


def make_multipath_model(cfg: Config) -> MultipathModel:
    try:
        return MultipathModel(
            tap_count=cfg.tap_count,
            delay_spread=cfg.delay_spread,
            max_delay=cfg.max_delay,
            rician_k=cfg.rician_k,
        )
    except ValueError as e:
        raise ValidationError(str(e))


def user_ids(cfg: Config) -> List[UserId]:
    """Synthetic users are called "1", "2", ... like users read back from a trace."""
    return [str(u + 1) for u in range(cfg.num_users)]


def channel_seed(cfg: Config, user_index: int, offset: int = 0) -> int:
    base = cfg.user_seeds[user_index] if cfg.user_seeds else cfg.seed
    return base + offset


def make_channels(cfg: Config, grid: ResourceGrid, offset: int = 0) -> List[FrequencyResponse]:
    """Per-user frequency responses, synthetic or from the trace. `offset` shifts every channel seed."""
    if cfg.channel_source == "trace":
        return load_channel_trace(cfg.trace_path, grid, magnitude_only=cfg.magnitude_only or None)

    model = make_multipath_model(cfg)
    return [
        generate_multipath_channel(grid, model, channel_seed(cfg, i, offset), user)
        for i, user in enumerate(user_ids(cfg))
    ]


def _per_user(values: List[float], users: List[UserId], name: str) -> List[float]:
    if len(values) == 1:
        return values * len(users)
    if len(values) != len(users):
        raise ValidationError(f"--{name} has {len(values)} values for {len(users)} users")
    return list(values)


def make_noise(cfg: Config, users: List[UserId]) -> Dict[UserId, UserNoise]:
    powers = _per_user(cfg.noise_power, users, "noise_power")
    return {user: UserNoise(user, power) for user, power in zip(users, powers)}


def make_loading(cfg: Config, grid: ResourceGrid) -> PowerLoading:
    if cfg.loading_path is None:
        return PowerLoading.flat(cfg.power_loading, grid.block_count)

    df = read_csv(cfg.loading_path)
    if list(df.columns) != LOADING_COLUMNS:
        raise ValidationError(f"{cfg.loading_path}: expected header {LOADING_COLUMNS}, got {list(df.columns)}")

    index = pd.to_numeric(df["block_index"], errors="coerce").to_numpy()
    coefficients = pd.to_numeric(df["coefficient"], errors="coerce").to_numpy(dtype=np.float64)
    if len(index) != grid.block_count or not np.array_equal(np.sort(index), np.arange(grid.block_count)):
        raise ValidationError(
            f"{cfg.loading_path}: needs exactly one row for every block 0..{grid.block_count - 1}, "
            f"got {len(index)} rows"
        )

    per_block = np.empty(grid.block_count)
    per_block[index.astype(np.int64)] = coefficients
    try:
        return PowerLoading(per_block)
    except ValueError as e:
        raise ValidationError(f"{cfg.loading_path}: {e}")


def make_threshold(cfg: Config) -> ThresholdConfig:
    return ThresholdConfig(threshold=cfg.threshold, mode=AdvantageMode(cfg.mode))


def make_demand(cfg: Config, users: List[UserId], block_count: int) -> Optional[Dict[UserId, int]]:
    """Demand fractions to block counts, rounded down."""
    if cfg.demand is None:
        return None
    fractions = _per_user(cfg.demand, users, "demand")
    return {user: int(math.floor(fraction * block_count)) for user, fraction in zip(users, fractions)}


@dataclass(frozen=True, eq=False)
class Scenario:
    grid: ResourceGrid
    users: List[UserId]
    channels: List[FrequencyResponse]
    blocks: List[BlockResponse]
    noise: Dict[UserId, UserNoise]
    loading: PowerLoading
    threshold: ThresholdConfig

    @property
    def num_users(self) -> int:
        return len(self.users)


def make_scenario(cfg: Config, offset: int = 0) -> Scenario:
    grid = make_grid(cfg)
    channels = make_channels(cfg, grid, offset)
    users = [c.user_id for c in channels]
    if len(users) < 2:
        raise ValidationError(f"Need at least 2 users, the channel source has {len(users)}")

    scenario = Scenario(
        grid=grid,
        users=users,
        channels=channels,
        blocks=[aggregate_blocks(c) for c in channels],
        noise=make_noise(cfg, users),
        loading=make_loading(cfg, grid),
        threshold=make_threshold(cfg),
    )
    log.debug("Scenario: %d users, %d blocks of %d subcarriers", len(users), grid.block_count, grid.block_size)
    return scenario


def init_run(cfg: Config) -> str:
    """Create the output directory, save the scenario next to the results and return its digest."""
    out = output_dir(cfg)
    init_file_logger(cfg)
    save_cfg(cfg, join(out, CONFIG_FILENAME))
    digest = cfg_digest(cfg)
    log.info("Scenario digest %s, writing to %s", digest, out)
    return digest
