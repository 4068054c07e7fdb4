import numpy as np
import pytest

from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.response import (
    BlockResponse,
    FrequencyResponse,
    PowerLoading,
    UserNoise,
    aggregate_blocks,
    snr,
)
from comparative_alloc.errors import DegenerateChannelError


class TestFrequencyResponse:
    grid = ResourceGrid(subcarrier_count=4, block_size=2)

    def test_validation(self):
        with pytest.raises(ValueError):
            FrequencyResponse("1", np.ones(3), self.grid)
        with pytest.raises(ValueError):
            FrequencyResponse("1", [1, 1, np.nan, 1], self.grid)

    def test_read_only(self):
        h = FrequencyResponse("1", np.ones(4), self.grid)
        with pytest.raises(ValueError):
            h.gains[0] = 2.0

    def test_rms_aggregation(self):
        h = FrequencyResponse("1", [3.0, 4.0j, 1.0, -1.0], self.grid)
        block = aggregate_blocks(h)
        assert block.user_id == "1"
        assert block.magnitudes[0] == pytest.approx(np.sqrt(12.5))
        assert block.magnitudes[1] == pytest.approx(1.0)

    def test_zero_block(self):
        h = FrequencyResponse("1", [0.0, 0.0, 1.0, 1.0], self.grid)
        with pytest.raises(DegenerateChannelError):
            aggregate_blocks(h)

        block = aggregate_blocks(h, floor=1e-3)
        assert block.magnitudes[0] == pytest.approx(1e-3)
        assert block.magnitudes[1] == pytest.approx(1.0)


class TestBlockResponse:
    grid = ResourceGrid(subcarrier_count=3, block_size=1)

    def test_zero_magnitude_rejected(self):
        with pytest.raises(DegenerateChannelError):
            BlockResponse("1", [1.0, 0.0, 2.0], self.grid)

    def test_length(self):
        with pytest.raises(ValueError):
            BlockResponse("1", [1.0, 2.0], self.grid)

    def test_magnitude_db(self):
        block = BlockResponse("1", [1.0, 10.0, 0.1], self.grid)
        assert np.allclose(block.magnitude_db(), [0.0, 20.0, -20.0])


class TestLinkBudget:
    def test_noise_and_loading_validation(self):
        with pytest.raises(ValueError):
            UserNoise("1", 0.0)
        with pytest.raises(ValueError):
            PowerLoading([1.0, -1.0])
        with pytest.raises(ValueError):
            PowerLoading([])

    def test_snr(self):
        grid = ResourceGrid(subcarrier_count=2, block_size=1)
        block = BlockResponse("1", [1.0, 2.0], grid)
        gamma = snr(block, PowerLoading([2.0, 0.5]), UserNoise("1", 0.5))
        assert np.allclose(gamma, [4.0, 4.0])

    def test_per_subcarrier_loading_is_averaged(self):
        grid = ResourceGrid(subcarrier_count=4, block_size=2)
        loading = PowerLoading([1.0, 3.0, 2.0, 2.0])
        assert np.allclose(loading.per_block(grid), [2.0, 2.0])
        assert np.array_equal(PowerLoading.flat(0.5, 2).per_block(grid), [0.5, 0.5])

        with pytest.raises(ValueError):
            PowerLoading.flat(1.0, 3).per_block(grid)
