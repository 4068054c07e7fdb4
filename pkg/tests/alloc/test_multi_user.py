import time

import numpy as np
import pytest

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.clustering import ClusteringStrategy
from comparative_alloc.alloc.multi_user import allocate_multi_user, group_response
from comparative_alloc.alloc.ranking import ThresholdConfig
from comparative_alloc.alloc.two_user import allocate_two_user
from comparative_alloc.channel.response import PowerLoading, UserNoise
from comparative_alloc.metrics.capacity import capacity
from comparative_alloc.utils.utils import make_rng
from tests.utils import random_magnitudes, synthetic_pair

NOISE_POWER = 0.125


def random_multi_user(num_users: int, num_blocks: int, seed: int) -> Allocation:
    """Equal shares of a seeded shuffle."""
    perm = make_rng(seed).permutation(num_blocks)
    owners = np.empty(num_blocks, dtype=object)
    for u, blocks in enumerate(np.array_split(perm, num_users)):
        owners[blocks] = str(u + 1)
    return Allocation(tuple(owners))


def sum_capacity(alloc, users) -> float:
    grid = users[0].grid
    noise = [UserNoise(u.user_id, NOISE_POWER) for u in users]
    return capacity(alloc, users, PowerLoading.flat(1.0, grid.block_count), noise, grid).total


class TestGroupResponse:
    def test_geometric_mean(self):
        magnitudes = np.array([[1.0, 4.0], [4.0, 1.0]])
        assert np.allclose(group_response(magnitudes), [2.0, 2.0])
        assert np.array_equal(group_response(magnitudes[:1]), [1.0, 4.0])


class TestMultiUser:
    def test_single_user_owns_everything(self):
        (user,) = random_magnitudes(0, 1, 10)
        alloc = allocate_multi_user([user], ThresholdConfig(1.1))
        assert alloc.owners == ("1",) * 10
        assert alloc.partition is None

    @pytest.mark.parametrize("strategy", list(ClusteringStrategy))
    def test_two_users_match_two_user_allocation(self, strategy):
        for seed in range(10):
            block1, block2 = synthetic_pair(seed)
            cfg = ThresholdConfig(1.1)
            multi = allocate_multi_user([block1, block2], cfg, strategy, seed=seed)
            two = allocate_two_user(block1, block2, cfg)
            assert multi.owners == two.owners
            assert np.array_equal(multi.ranking.order, two.ranking.order)

    def test_every_block_has_one_owner(self):
        for num_users in (3, 4, 5, 8):
            users = random_magnitudes(num_users, num_users, 64)
            for strategy in ClusteringStrategy:
                alloc = allocate_multi_user(users, ThresholdConfig(1.1), strategy, seed=7)
                assert alloc.block_count == 64
                assert set(alloc.owners) <= {u.user_id for u in users}
                assert sum(alloc.count_of(u.user_id) for u in users) == 64

    def test_deterministic(self):
        users = random_magnitudes(3, 5, 40)
        for strategy in ClusteringStrategy:
            first = allocate_multi_user(users, ThresholdConfig(1.1), strategy, seed=5)
            second = allocate_multi_user(users, ThresholdConfig(1.1), strategy, seed=5)
            assert first.owners == second.owners

    def test_beats_random_allocation(self):
        wins = 0
        for seed in range(100):
            users = random_magnitudes(seed, 4, 64)
            ca = allocate_multi_user(users, ThresholdConfig(1.1), seed=seed)
            wins += sum_capacity(ca, users) >= sum_capacity(random_multi_user(4, 64, seed), users)
        assert wins >= 95

    def test_invalid_input(self):
        users = random_magnitudes(0, 2, 8)
        with pytest.raises(ValueError):
            allocate_multi_user([], ThresholdConfig(1.1))
        with pytest.raises(ValueError):
            allocate_multi_user([users[0], users[0]], ThresholdConfig(1.1))

    def test_scales_with_block_count(self):
        def median_time(num_blocks: int) -> float:
            users = random_magnitudes(num_blocks, 8, num_blocks)
            allocate_multi_user(users, ThresholdConfig(1.1))
            times = []
            for _ in range(20):
                start = time.perf_counter()
                allocate_multi_user(users, ThresholdConfig(1.1))
                times.append(time.perf_counter() - start)
            return float(np.median(times))

        small, large = median_time(1024), median_time(2048)
        assert large / small <= 2.5
        assert large < 0.1
