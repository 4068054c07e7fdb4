from comparative_alloc.alloc.allocation import Allocation, allocation_from_mask, allocation_from_split
from comparative_alloc.alloc.clustering import ClusteringStrategy, cluster_users
from comparative_alloc.alloc.consistency import ConsistencyReport, ranking_consistency
from comparative_alloc.alloc.efficiency import SpectralEfficiencyVector, spectral_efficiency
from comparative_alloc.alloc.multi_user import allocate_multi_user
from comparative_alloc.alloc.ranking import (
    AdvantageMode,
    RatioRanking,
    ThresholdConfig,
    ThresholdPartition,
    rank_by_ratio,
    select_by_threshold,
)
from comparative_alloc.alloc.two_user import allocate_two_user, two_user_ranking
