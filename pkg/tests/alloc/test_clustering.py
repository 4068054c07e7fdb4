import numpy as np
import pytest

from comparative_alloc.alloc.clustering import ClusteringStrategy, cluster_indices, cluster_users
from comparative_alloc.channel.response import BlockResponse
from tests.utils import flat_grid, random_magnitudes


def responses_of(magnitudes):
    grid = flat_grid(len(magnitudes[0]))
    return [BlockResponse(name, m, grid) for name, m in zip("ABCDEFGH", magnitudes)]


class TestClustering:
    def test_two_users(self):
        users = random_magnitudes(0, 2, 16)
        for strategy in ClusteringStrategy:
            group1, group2 = cluster_users(users, strategy, seed=3)
            assert [u.user_id for u in group1] == ["1"]
            assert [u.user_id for u in group2] == ["2"]

    def test_separated_pairs(self):
        near = [1.0, 2.0, 1.0, 2.0]
        far = [2.0, 1.0, 2.0, 1.0]
        group1, group2 = cluster_users(responses_of([near, near, far, far]), ClusteringStrategy.RESPONSE_BASED)
        assert [u.user_id for u in group1] == ["A", "B"]
        assert [u.user_id for u in group2] == ["C", "D"]

    def test_identical_users(self):
        group1, group2 = cluster_users(responses_of([[1.0, 1.0]] * 3), ClusteringStrategy.RESPONSE_BASED)
        # distance ties join the first anchor, the second anchor is never empty
        assert [u.user_id for u in group1] == ["A", "C"]
        assert [u.user_id for u in group2] == ["B"]

    def test_random_is_seeded(self):
        log_magnitudes = np.zeros((7, 4))
        first = cluster_indices(log_magnitudes, ClusteringStrategy.RANDOM, seed=11)
        second = cluster_indices(log_magnitudes, ClusteringStrategy.RANDOM, seed=11)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))
        assert (len(first[0]), len(first[1])) == (4, 3)
        assert np.array_equal(np.sort(np.concatenate(first)), np.arange(7))

        splits = {tuple(cluster_indices(log_magnitudes, "random", seed=s)[0]) for s in range(20)}
        assert len(splits) > 1

    def test_partition_of_users(self):
        for seed in range(20):
            users = random_magnitudes(seed, 6, 32)
            group1, group2 = cluster_users(users, ClusteringStrategy.RESPONSE_BASED)
            assert group1 and group2
            assert sorted(u.user_id for u in group1 + group2) == [str(i) for i in range(1, 7)]

    def test_needs_two_users(self):
        with pytest.raises(ValueError):
            cluster_users(random_magnitudes(0, 1, 4), ClusteringStrategy.RANDOM)
