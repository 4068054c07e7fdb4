from os.path import join
from typing import List, Optional, Sequence, Tuple

import numpy as np

from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.cfg.arguments import default_cfg
from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.multipath import MultipathModel, generate_multipath_channel
from comparative_alloc.channel.response import BlockResponse, aggregate_blocks
from comparative_alloc.utils.attr_dict import AttrDict
from comparative_alloc.utils.utils import make_rng


def flat_grid(num_blocks: int) -> ResourceGrid:
    """One subcarrier per block, handy for hand-written magnitudes."""
    return ResourceGrid(subcarrier_count=num_blocks, block_size=1)


def blocks_from_magnitudes(m1: Sequence[float], m2: Sequence[float]) -> Tuple[BlockResponse, BlockResponse]:
    grid = flat_grid(len(m1))
    return BlockResponse("1", m1, grid), BlockResponse("2", m2, grid)


def synthetic_pair(
    seed: int, grid: Optional[ResourceGrid] = None, model: Optional[MultipathModel] = None
) -> Tuple[BlockResponse, BlockResponse]:
    """Two independent users on the default 125-block grid."""
    grid = ResourceGrid() if grid is None else grid
    model = MultipathModel() if model is None else model
    return (
        aggregate_blocks(generate_multipath_channel(grid, model, seed, "1")),
        aggregate_blocks(generate_multipath_channel(grid, model, seed, "2")),
    )


def random_magnitudes(seed: int, num_users: int, num_blocks: int) -> List[BlockResponse]:
    """Rayleigh-distributed block magnitudes, fast to build in bulk."""
    rng = make_rng(seed)
    grid = flat_grid(num_blocks)
    shape = (num_users, num_blocks)
    magnitudes = np.abs(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return [BlockResponse(str(u + 1), magnitudes[u], grid) for u in range(num_users)]


def random_efficiencies(seed: int, num_blocks: int) -> Tuple[SpectralEfficiencyVector, SpectralEfficiencyVector]:
    rng = make_rng(seed)
    return (
        SpectralEfficiencyVector("1", rng.uniform(0.1, 8.0, num_blocks)),
        SpectralEfficiencyVector("2", rng.uniform(0.1, 8.0, num_blocks)),
    )


def cli_cfg(out_dir, *flags: str) -> AttrDict:
    return default_cfg([f"--out={out_dir}", *flags])


def read_bytes(directory, filename: str) -> bytes:
    with open(join(directory, filename), "rb") as f:
        return f.read()
