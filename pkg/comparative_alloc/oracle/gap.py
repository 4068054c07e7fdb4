from __future__ import annotations

from comparative_alloc.alloc.allocation import Allocation
from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.oracle.objective import OracleResult, split_objective, user_ids

GAP_COLUMNS = ["seed", "k", "ca_sum_bps", "oracle_sum_bps", "gap"]


def ca_objective(
    ca: Allocation, eta1: SpectralEfficiencyVector, eta2: SpectralEfficiencyVector, block_bandwidth: float = 1.0
) -> float:
    user1, _ = user_ids(eta1, eta2)
    return split_objective(eta1.eta, eta2.eta, ca.mask_of(user1), block_bandwidth)


def optimality_gap(
    ca: Allocation,
    oracle: OracleResult,
    eta1: SpectralEfficiencyVector,
    eta2: SpectralEfficiencyVector,
    block_bandwidth: float = 1.0,
) -> float:
    """Sum capacity of the comparative-advantage split relative to the fixed-split optimum, in (0, 1]."""
    user1, _ = user_ids(eta1, eta2)
    ca_k, oracle_k = ca.count_of(user1), len(oracle.user1_blocks)
    if ca_k != oracle_k:
        raise ValueError(f"Allocations give user {user1} different block counts: {ca_k} vs {oracle_k}")

    ca_sum = ca_objective(ca, eta1, eta2, block_bandwidth)
    if oracle.objective == 0:
        return 1.0
    return ca_sum / oracle.objective
