"""Brute-force reference for desk-scale instances: every k-subset of blocks for user 1."""

from __future__ import annotations

import itertools
from typing import Optional, Sequence, Tuple

import numpy as np

from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector
from comparative_alloc.errors import GuardRefusalError
from comparative_alloc.oracle.objective import OracleResult, check_split, make_result, split_objective
from comparative_alloc.utils.misc import ENUMERATION_GUARD
from comparative_alloc.utils.utils import log

EXHAUSTIVE = "exhaustive"


def exhaustive_best_sum(
    eta1: SpectralEfficiencyVector,
    eta2: SpectralEfficiencyVector,
    k: int,
    block_bandwidth: float = 1.0,
    rank_range: Optional[Tuple[int, int]] = None,
) -> OracleResult:
    """
    Enumerate the C(N, k) subsets in lexicographic order and keep the first one with the highest sum capacity,
    so ties resolve to the lexicographically smallest subset.
    `rank_range=(start, stop)` restricts the search to those subset ranks, see merge_oracle_results().
    """
    num_blocks = check_split(eta1, eta2, k)
    if num_blocks > ENUMERATION_GUARD:
        raise GuardRefusalError(f"Exhaustive search over {num_blocks} blocks refused, the limit is {ENUMERATION_GUARD}")

    subsets = itertools.combinations(range(num_blocks), k)
    if rank_range is not None:
        subsets = itertools.islice(subsets, rank_range[0], rank_range[1])

    best_mask, best_objective = None, None
    evaluated = 0
    for subset in subsets:
        mask = np.zeros(num_blocks, dtype=bool)
        mask[list(subset)] = True
        objective = split_objective(eta1.eta, eta2.eta, mask, block_bandwidth)
        evaluated += 1
        if best_objective is None or objective > best_objective:
            best_mask, best_objective = mask, objective

    if best_mask is None:
        raise ValueError(f"Empty subset rank range {rank_range}")

    log.debug("Exhaustive search N=%d k=%d: %d subsets, best %.6g", num_blocks, k, evaluated, best_objective)
    return make_result(eta1, eta2, best_mask, best_objective, EXHAUSTIVE, evaluated)


def merge_oracle_results(results: Sequence[OracleResult]) -> OracleResult:
    """Combine searches over disjoint rank ranges: highest objective, then lexicographically smallest subset."""
    if not results:
        raise ValueError("Nothing to merge")

    best = min(results, key=lambda r: (-r.objective, r.user1_blocks))
    return OracleResult(
        allocation=best.allocation,
        objective=best.objective,
        method_label=best.method_label,
        user1_blocks=best.user1_blocks,
        evaluated=sum(r.evaluated for r in results),
    )
