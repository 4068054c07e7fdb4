import math

import numpy as np
import pytest

from comparative_alloc.alloc.allocation import allocation_from_split
from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.alloc.ranking import rank_by_ratio
from comparative_alloc.errors import GuardRefusalError
from comparative_alloc.oracle import (
    difference_greedy,
    exhaustive_best_sum,
    merge_oracle_results,
    optimality_gap,
    random_allocation,
)
from comparative_alloc.oracle.gap import ca_objective
from comparative_alloc.utils.utils import make_rng
from tests.utils import random_efficiencies


def efficiencies(eta1, eta2):
    return SpectralEfficiencyVector("1", np.array(eta1, float)), SpectralEfficiencyVector("2", np.array(eta2, float))


class TestExhaustive:
    def test_single_block_split(self):
        eta1, eta2 = efficiencies([2.0, 1.0], [1.0, 2.0])
        result = exhaustive_best_sum(eta1, eta2, 1)
        assert result.user1_blocks == (0,)
        assert result.objective == 4.0
        assert result.evaluated == 2
        assert result.allocation.owners == ("1", "2")

    def test_ties_keep_first_subset(self):
        eta1, eta2 = efficiencies([1.0] * 4, [1.0] * 4)
        assert exhaustive_best_sum(eta1, eta2, 2).user1_blocks == (0, 1)

    def test_guard(self):
        eta1, eta2 = random_efficiencies(0, 21)
        with pytest.raises(GuardRefusalError):
            exhaustive_best_sum(eta1, eta2, 1)

    def test_invalid_split(self):
        eta1, eta2 = random_efficiencies(0, 4)
        with pytest.raises(ValueError):
            exhaustive_best_sum(eta1, eta2, 5)
        with pytest.raises(ValueError):
            exhaustive_best_sum(eta1, eta2, 2, rank_range=(10, 10))

    def test_merge_rank_ranges(self):
        eta1, eta2 = random_efficiencies(3, 10)
        full = exhaustive_best_sum(eta1, eta2, 4)
        total = math.comb(10, 4)
        bounds = [0, 37, 100, 161, total]
        parts = [exhaustive_best_sum(eta1, eta2, 4, rank_range=(a, b)) for a, b in zip(bounds[:-1], bounds[1:])]
        merged = merge_oracle_results(parts)
        assert merged.user1_blocks == full.user1_blocks
        assert merged.objective == full.objective
        assert merged.evaluated == total

        with pytest.raises(ValueError):
            merge_oracle_results([])


class TestDifferenceGreedy:
    def test_worked_instance(self):
        eta1, eta2 = efficiencies([0.2, 101.0], [0.1, 100.0])
        greedy = difference_greedy(eta1, eta2, 1)
        assert greedy.user1_blocks == (1,)
        assert greedy.objective == pytest.approx(101.1)

        ca = allocation_from_split(rank_by_ratio(eta1.eta, eta2.eta).order, 1, "1", "2")
        assert ca.blocks_of("1").tolist() == [0]
        assert ca_objective(ca, eta1, eta2) == pytest.approx(100.2)
        assert optimality_gap(ca, greedy, eta1, eta2) == pytest.approx(100.2 / 101.1)

    def test_matches_exhaustive(self):
        """200 random instances, every split: the greedy sum equals the brute-force optimum exactly."""
        rng = make_rng(42)
        for instance in range(200):
            num_blocks = int(rng.integers(4, 13))
            eta1, eta2 = random_efficiencies(instance, num_blocks)
            for k in range(num_blocks + 1):
                oracle = exhaustive_best_sum(eta1, eta2, k, block_bandwidth=720e3)
                greedy = difference_greedy(eta1, eta2, k, block_bandwidth=720e3)
                assert oracle.evaluated == math.comb(num_blocks, k)
                assert greedy.objective == oracle.objective, f"{instance=} {k=}"
                assert greedy.user1_blocks == oracle.user1_blocks

    def test_gap_bounds(self):
        for instance in range(50):
            eta1, eta2 = random_efficiencies(instance, 8)
            order = rank_by_ratio(eta1.eta, eta2.eta).order
            for k in range(9):
                ca = allocation_from_split(order, k, "1", "2")
                gap = optimality_gap(ca, difference_greedy(eta1, eta2, k), eta1, eta2)
                assert 0.0 < gap <= 1.0

    def test_gap_needs_same_split(self):
        eta1, eta2 = random_efficiencies(0, 6)
        ca = allocation_from_split(np.arange(6), 2, "1", "2")
        with pytest.raises(ValueError):
            optimality_gap(ca, difference_greedy(eta1, eta2, 3), eta1, eta2)


class TestRandomAllocation:
    def test_seeded(self):
        first = random_allocation(20, 7, seed=5)
        assert first.owners == random_allocation(20, 7, seed=5).owners
        assert first.count_of("1") == 7 and first.count_of("2") == 13

    def test_uniform_membership(self):
        hits = np.zeros(10)
        for seed in range(10_000):
            hits += random_allocation(10, 5, seed).mask_of("1")
        assert np.all(np.abs(hits / 10_000 - 0.5) <= 0.02)

    def test_invalid_split(self):
        with pytest.raises(ValueError):
            random_allocation(4, 5, seed=0)
