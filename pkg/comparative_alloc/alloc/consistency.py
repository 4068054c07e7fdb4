from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.stats import kendalltau

from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.alloc.ranking import rank_by_ratio
from comparative_alloc.channel.response import BlockResponse


@dataclass(frozen=True)
class ConsistencyReport:
    tau: float  # Kendall tau-b in [-1, 1]
    all_ties: bool  # one of the orderings is fully tied, tau reported as 0


def ranking_consistency(
    eta1: SpectralEfficiencyVector,
    eta2: SpectralEfficiencyVector,
    block1: BlockResponse,
    block2: BlockResponse,
) -> ConsistencyReport:
    """
    How faithfully the |h1/h2| ordering reproduces the eta1/eta2 ordering at the current operating point.
    Kendall rank correlation between the two per-block ratio vectors.
    """
    if not (len(eta1) == len(eta2) == block1.block_count == block2.block_count):
        raise ValueError("Spectral efficiencies and block responses must cover the same blocks")

    efficiency_ratios = rank_by_ratio(eta1.eta, eta2.eta).ratio_of_block()
    response_ratios = rank_by_ratio(block1.magnitudes, block2.magnitudes).ratio_of_block()

    if len(efficiency_ratios) < 2:
        return ConsistencyReport(0.0, True)

    tau = kendalltau(efficiency_ratios, response_ratios).correlation
    if tau is None or math.isnan(tau):
        return ConsistencyReport(0.0, True)
    return ConsistencyReport(float(tau), False)
