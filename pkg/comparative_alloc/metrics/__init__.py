from comparative_alloc.metrics.capacity import CapacityReport, capacity, full_channel_capacities
from comparative_alloc.metrics.tradeoff import (
    EqualCapacityPoint,
    TradeoffCurve,
    TradeoffStrategy,
    equal_capacity_point,
    improvement,
    improvement_summary,
    tradeoff_curve,
)
