import numpy as np
import pytest

from comparative_alloc.alloc.consistency import ranking_consistency
from comparative_alloc.alloc.efficiency import spectral_efficiency
from comparative_alloc.channel.response import PowerLoading, UserNoise, snr
from tests.utils import blocks_from_magnitudes, synthetic_pair

# Kendall tau between the two orderings for synthetic_pair(1) at 20 dB
SEED_1_TAU_20DB = 0.995


def efficiencies(block1, block2, noise_power: float):
    loading = PowerLoading.flat(1.0, block1.block_count)
    return (
        spectral_efficiency(snr(block1, loading, UserNoise(block1.user_id, noise_power)), block1.user_id),
        spectral_efficiency(snr(block2, loading, UserNoise(block2.user_id, noise_power)), block2.user_id),
    )


def pairwise_tau(x: np.ndarray, y: np.ndarray) -> float:
    """Kendall tau-b counted pair by pair."""
    concordant = discordant = ties_x = ties_y = 0
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            sx, sy = np.sign(x[i] - x[j]), np.sign(y[i] - y[j])
            if sx == 0:
                ties_x += 1
            if sy == 0:
                ties_y += 1
            if sx * sy > 0:
                concordant += 1
            elif sx * sy < 0:
                discordant += 1
    pairs = n * (n - 1) // 2
    return (concordant - discordant) / np.sqrt((pairs - ties_x) * (pairs - ties_y))


class TestRankingConsistency:
    def test_all_ties(self):
        block1, block2 = blocks_from_magnitudes([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        report = ranking_consistency(*efficiencies(block1, block2, 1.0), block1, block2)
        assert report.tau == 0.0
        assert report.all_ties

    def test_agreeing_orders(self):
        block1, block2 = blocks_from_magnitudes([2.0, 1.0], [1.0, 2.0])
        report = ranking_consistency(*efficiencies(block1, block2, 1.0), block1, block2)
        assert report.tau == 1.0
        assert not report.all_ties

    def test_single_block(self):
        block1, block2 = blocks_from_magnitudes([2.0], [1.0])
        assert ranking_consistency(*efficiencies(block1, block2, 1.0), block1, block2).all_ties

    def test_high_snr_agreement(self):
        """Unit mean channel power, 20 dB mean SNR on the full 125-block grid."""
        for seed in range(20):
            block1, block2 = synthetic_pair(seed)
            eta1, eta2 = efficiencies(block1, block2, 0.01)
            report = ranking_consistency(eta1, eta2, block1, block2)
            assert report.tau >= 0.9, seed
            assert not report.all_ties

    def test_regression_baseline(self):
        block1, block2 = synthetic_pair(1)
        eta1, eta2 = efficiencies(block1, block2, 0.01)
        report = ranking_consistency(eta1, eta2, block1, block2)

        expected = pairwise_tau(eta1.eta / eta2.eta, block1.magnitudes / block2.magnitudes)
        assert abs(report.tau - expected) < 1e-9
        assert report.tau == pytest.approx(SEED_1_TAU_20DB, abs=5e-4)
