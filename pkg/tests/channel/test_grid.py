import numpy as np
import pytest

from comparative_alloc.channel.grid import ResourceGrid


class TestResourceGrid:
    def test_default_grid(self):
        grid = ResourceGrid()
        assert grid.block_count == 125
        assert grid.bandwidth == pytest.approx(90e6)
        assert grid.block_bandwidth == pytest.approx(720e3)

    @pytest.mark.parametrize("subcarrier_count, block_size", [(1501, 12), (0, 12), (12, 0), (10, 3)])
    def test_invalid_grid(self, subcarrier_count, block_size):
        with pytest.raises(ValueError):
            ResourceGrid(subcarrier_count=subcarrier_count, block_size=block_size)

    def test_offsets_are_centred(self):
        grid = ResourceGrid(subcarrier_count=24, subcarrier_spacing=15e3, block_size=12)
        offsets = grid.baseband_offsets()
        assert len(offsets) == 24
        assert offsets[0] == -offsets[-1]
        assert np.allclose(np.diff(offsets), 15e3)

    def test_block_slices(self):
        grid = ResourceGrid(subcarrier_count=36, block_size=12)
        assert grid.subcarriers_of_block(2) == slice(24, 36)
