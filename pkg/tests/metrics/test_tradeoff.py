import itertools

import numpy as np
import pytest

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.ranking import rank_by_ratio
from comparative_alloc.channel.response import BlockResponse, PowerLoading, UserNoise
from comparative_alloc.metrics.capacity import capacity
from comparative_alloc.metrics.tradeoff import (
    TradeoffCurve,
    TradeoffStrategy,
    equal_capacity_point,
    improvement,
    improvement_summary,
    tradeoff_curve,
)
from tests.utils import blocks_from_magnitudes, random_magnitudes, synthetic_pair

NOISE_POWER = 0.125


def curves(block1, block2, strategies=tuple(TradeoffStrategy), seed=0, trials=200):
    grid = block1.grid
    loading = PowerLoading.flat(1.0, grid.block_count)
    noise1, noise2 = UserNoise(block1.user_id, NOISE_POWER), UserNoise(block2.user_id, NOISE_POWER)
    return {
        s: tradeoff_curve(block1, block2, loading, noise1, noise2, grid, s, seed=seed, trials=trials)
        for s in strategies
    }


def line_curve(c1, c2) -> TradeoffCurve:
    return TradeoffCurve(TradeoffStrategy.CA, np.arange(len(c1)), np.array(c1, float), np.array(c2, float))


@pytest.fixture(scope="module")
def ensemble():
    """Curves of all strategies and full-channel capacities for 100 default-scale channel pairs."""
    results = []
    for seed in range(100):
        block1, block2 = synthetic_pair(seed)
        grid = block1.grid
        loading = PowerLoading.flat(1.0, grid.block_count)
        noise = [UserNoise("1", NOISE_POWER), UserNoise("2", NOISE_POWER)]
        full1 = capacity(Allocation(("1",) * grid.block_count), [block1, block2], loading, noise, grid).total
        full2 = capacity(Allocation(("2",) * grid.block_count), [block1, block2], loading, noise, grid).total
        results.append((seed, block1, block2, full1, full2, curves(block1, block2, seed=seed)))
    return results


class TestTradeoffCurve:
    def test_full_channel_scale(self):
        block1, block2 = synthetic_pair(0)
        curve = curves(block1, block2, [TradeoffStrategy.CA])[TradeoffStrategy.CA]
        assert 200e6 <= curve.c1[-1] <= 300e6
        assert 200e6 <= curve.c2[0] <= 300e6

    def test_identical_flat_channels_coincide(self):
        block1, block2 = blocks_from_magnitudes([1.0] * 8, [1.0] * 8)
        result = curves(block1, block2, [TradeoffStrategy.CA, TradeoffStrategy.ANTI_CA])
        ca, anti = result[TradeoffStrategy.CA], result[TradeoffStrategy.ANTI_CA]
        assert np.array_equal(ca.c1, anti.c1)
        assert np.array_equal(ca.c2, anti.c2)

        point = equal_capacity_point(ca)
        assert point.k == 4.0
        assert point.throughput == ca.c1[-1] / 2
        assert improvement(ca, anti) == 0.0

    def test_identical_selective_channels(self):
        block, _ = synthetic_pair(9)
        twin = BlockResponse("2", block.magnitudes, block.grid)
        result = curves(block, twin, [TradeoffStrategy.CA, TradeoffStrategy.ANTI_CA])
        ca, anti = result[TradeoffStrategy.CA], result[TradeoffStrategy.ANTI_CA]
        assert improvement(ca, anti) == pytest.approx(0.0, abs=1e-9)

    def test_random_curve(self):
        block1, block2 = synthetic_pair(2)
        result = curves(block1, block2, seed=2, trials=200)
        random = result[TradeoffStrategy.RANDOM]
        assert random.trials == 200
        tolerance = 1e-9 * random.c1[-1]
        assert np.all(random.c1_min <= random.c1 + tolerance) and np.all(random.c1 <= random.c1_max + tolerance)
        assert np.all(random.c2_min <= random.c2 + tolerance) and np.all(random.c2 <= random.c2_max + tolerance)
        assert random.to_dict()["envelope"]["c1_max_bps"][-1] == random.c1[-1]

        again = curves(block1, block2, [TradeoffStrategy.RANDOM], seed=2)[TradeoffStrategy.RANDOM]
        assert np.array_equal(random.c1, again.c1)

        with pytest.raises(ValueError):
            curves(block1, block2, [TradeoffStrategy.RANDOM], trials=1)

    def test_random_lies_between_ca_and_anti_ca(self):
        inside = total = 0
        for seed in range(5):
            result = curves(*synthetic_pair(seed), seed=seed, trials=200)
            ca, anti, random = (result[s] for s in TradeoffStrategy)
            margin = 3 * random.c1_sem
            inside += np.count_nonzero((random.c1 <= ca.c1 + margin) & (random.c1 >= anti.c1 - margin))
            total += len(random.c1)
        assert inside >= 0.95 * total

    def test_parse(self):
        assert TradeoffStrategy.parse("random") == TradeoffStrategy.RANDOM
        assert TradeoffStrategy.parse("anti_ca") == TradeoffStrategy.ANTI_CA
        with pytest.raises(ValueError):
            TradeoffStrategy.parse("best")

    def test_ratio_prefix_is_extremal(self):
        """Over every k-subset of N <= 12 blocks the ca prefix has the largest log-ratio sum, anti_ca the least."""
        for seed in range(30):
            num_blocks = 4 + seed % 9
            block1, block2 = random_magnitudes(seed, 2, num_blocks)
            log_ratio = np.log(block1.magnitudes / block2.magnitudes)
            order = rank_by_ratio(block1.magnitudes, block2.magnitudes).order
            for k in range(num_blocks + 1):
                ca_score = log_ratio[order[:k]].sum()
                anti_score = log_ratio[order[num_blocks - k :]].sum()
                for subset in itertools.combinations(range(num_blocks), k):
                    score = log_ratio[list(subset)].sum()
                    assert anti_score - 1e-12 <= score <= ca_score + 1e-12

    def test_user1_capacity_is_not_ordered_by_ratio(self):
        # block 0 has the larger ratio, block 1 the larger user-1 capacity
        block1, block2 = blocks_from_magnitudes([1.0, 10.0], [0.5, 10.0])
        result = curves(block1, block2, [TradeoffStrategy.CA, TradeoffStrategy.ANTI_CA])
        ca, anti = result[TradeoffStrategy.CA], result[TradeoffStrategy.ANTI_CA]
        assert ca.c1[1] < anti.c1[1]
        assert ca.c1[1] + ca.c2[1] > anti.c1[1] + anti.c2[1]


class TestEqualCapacity:
    def test_exact_crossing(self):
        point = equal_capacity_point(line_curve([0, 6, 12], [10, 6, 0]))
        assert (point.throughput, point.k) == (6.0, 1.0)

    def test_interpolated_crossing(self):
        point = equal_capacity_point(line_curve([0, 238], [238, 0]))
        assert point.throughput == pytest.approx(119.0)
        assert point.k == pytest.approx(0.5)

    def test_improvement(self):
        ca, base = line_curve([0, 238], [238, 0]), line_curve([0, 200], [200, 0])
        assert improvement(ca, base) == pytest.approx(19.0)
        assert improvement(ca, ca) == 0.0
        with pytest.raises(ValueError):
            improvement(ca, line_curve([0, 1, 2], [2, 1, 0]))

    def test_summary(self):
        summary = improvement_summary([13.4, 16.7, 19.0, 23.1])
        assert summary["count"] == 4
        assert summary["median"] == pytest.approx(17.85)
        assert summary["min"] == 13.4 and summary["max"] == 23.1
        assert summary["positive"] == 4
        assert improvement_summary([]) == {"count": 0}
        assert improvement_summary([5.0])["std"] == 0.0


class TestStatisticalImprovement:
    def test_endpoints_are_exact(self, ensemble):
        for seed, _, _, full1, full2, result in ensemble:
            for strategy, curve in result.items():
                assert curve.block_count == 125
                assert (curve.c1[0], curve.c2[0]) == (0.0, full2), (seed, strategy)
                assert (curve.c1[-1], curve.c2[-1]) == (full1, 0.0), (seed, strategy)

    def test_ca_is_monotonic(self, ensemble):
        for seed, _, _, full1, full2, result in ensemble:
            curve = result[TradeoffStrategy.CA]
            tolerance = 1e-9 * max(full1, full2)
            assert np.all(np.diff(curve.c1) >= -tolerance), seed
            assert np.all(np.diff(curve.c2) <= tolerance), seed

    def test_ca_beats_anti_ca(self, ensemble):
        """The CA ordering wins at the equal-capacity point."""
        values = np.array(
            [improvement(result[TradeoffStrategy.CA], result[TradeoffStrategy.ANTI_CA]) for *_, result in ensemble]
        )
        assert np.count_nonzero(values > 0) >= 95
        assert 5.0 <= np.median(values) <= 40.0

    def test_user1_share_mostly_dominates(self, ensemble):
        """ca c1 >= anti_ca c1 at every k on most channel pairs, and on nearly every (pair, k) point."""
        dominated_pairs = dominated_points = total_points = 0
        for seed, block1, block2, *_, result in ensemble:
            ca, anti = result[TradeoffStrategy.CA], result[TradeoffStrategy.ANTI_CA]
            holds = ca.c1 >= anti.c1 - 1e-9 * ca.c1[-1]
            dominated_pairs += bool(np.all(holds))
            dominated_points += np.count_nonzero(holds)
            total_points += len(holds)

            log_ratio = np.log(block1.magnitudes / block2.magnitudes)
            order = rank_by_ratio(block1.magnitudes, block2.magnitudes).order
            ca_prefix = np.concatenate([[0.0], np.cumsum(log_ratio[order])])
            anti_prefix = np.concatenate([[0.0], np.cumsum(log_ratio[order[::-1]])])
            assert np.all(ca_prefix >= anti_prefix - 1e-9), seed

        assert dominated_pairs >= 85
        assert dominated_points >= 0.98 * total_points
