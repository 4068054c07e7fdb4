from __future__ import annotations

import numpy as np

from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.oracle.objective import OracleResult, check_split, make_result, split_objective

DIFFERENCE_GREEDY = "difference_greedy"


def difference_order(eta1: SpectralEfficiencyVector, eta2: SpectralEfficiencyVector) -> np.ndarray:
    return np.argsort(-(eta1.eta - eta2.eta), kind="stable")


def difference_greedy(
    eta1: SpectralEfficiencyVector, eta2: SpectralEfficiencyVector, k: int, block_bandwidth: float = 1.0
) -> OracleResult:
    """
    Exact optimum for a fixed split k. The sum capacity is sum(eta2) + sum over user 1's set S of (eta1 - eta2),
    so the best S is the k blocks with the largest difference (ties to the lower block index).
    """
    num_blocks = check_split(eta1, eta2, k)
    mask = np.zeros(num_blocks, dtype=bool)
    mask[difference_order(eta1, eta2)[:k]] = True
    objective = split_objective(eta1.eta, eta2.eta, mask, block_bandwidth)
    return make_result(eta1, eta2, mask, objective, DIFFERENCE_GREEDY, evaluated=1)
