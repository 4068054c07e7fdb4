from comparative_alloc.oracle.baseline import random_allocation
from comparative_alloc.oracle.exhaustive import exhaustive_best_sum, merge_oracle_results
from comparative_alloc.oracle.gap import ca_objective, optimality_gap
from comparative_alloc.oracle.greedy import difference_greedy
from comparative_alloc.oracle.objective import OracleResult
