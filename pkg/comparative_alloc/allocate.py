from os.path import join

import numpy as np
import pandas as pd

from comparative_alloc.alloc.clustering import ClusteringStrategy
from comparative_alloc.alloc.consistency import ranking_consistency
from comparative_alloc.alloc.efficiency import spectral_efficiency
from comparative_alloc.alloc.multi_user import allocate_multi_user
from comparative_alloc.alloc.ranking import RatioRanking
from comparative_alloc.alloc.two_user import allocate_two_user
from comparative_alloc.cfg.scenario import init_run, make_demand, make_scenario
from comparative_alloc.channel.response import snr
from comparative_alloc.metrics.capacity import capacity, full_channel_capacities
from comparative_alloc.utils.io import write_csv, write_json
from comparative_alloc.utils.misc import ExitStatus
from comparative_alloc.utils.timing import Timing
from comparative_alloc.utils.typing import Config, StatusCode
from comparative_alloc.utils.utils import log

RATIO_FILENAME = "ratios.csv"
ALLOCATION_FILENAME = "allocation.json"
RATIO_COLUMNS = ["rank", "block_index", "ratio"]


def ratio_frame(ranking: RatioRanking) -> pd.DataFrame:
    """Ranked ratios, rank 1 is the block where user 1 (or group 1) has the largest advantage."""
    return pd.DataFrame(
        {"rank": np.arange(1, len(ranking) + 1), "block_index": ranking.order, "ratio": ranking.ratios},
        columns=RATIO_COLUMNS,
    )


def cmd_allocate(cfg: Config) -> StatusCode:
    digest = init_run(cfg)
    timing = Timing("allocate")

    with timing.timeit("channels"):
        scenario = make_scenario(cfg)
    grid, users = scenario.grid, scenario.users

    report = {}
    with timing.timeit("allocate"):
        if scenario.num_users == 2:
            block1, block2 = scenario.blocks
            noise1, noise2 = scenario.noise[users[0]], scenario.noise[users[1]]
            demand = make_demand(cfg, users, grid.block_count)
            alloc = allocate_two_user(block1, block2, scenario.threshold, demand, scenario.loading, noise1, noise2)

            eta1 = spectral_efficiency(snr(block1, scenario.loading, noise1), users[0])
            eta2 = spectral_efficiency(snr(block2, scenario.loading, noise2), users[1])
            consistency = ranking_consistency(eta1, eta2, block1, block2)
            report["consistency"] = {"kendall_tau": consistency.tau, "all_ties": consistency.all_ties}
            log.info("Kendall tau between |h| and efficiency ratio orderings: %.4f", consistency.tau)
        else:
            if cfg.demand is not None:
                log.warning("Demand is only served in two-user runs, ignoring --demand for %d users", len(users))
            alloc = allocate_multi_user(
                scenario.blocks, scenario.threshold, ClusteringStrategy(cfg.clustering), seed=cfg.seed
            )

    with timing.timeit("capacity"):
        capacities = capacity(alloc, scenario.blocks, scenario.loading, scenario.noise, grid)
        full_channel = full_channel_capacities(scenario.blocks, scenario.loading, scenario.noise, grid)

    partition = alloc.partition
    report.update(alloc.to_dict())
    report.update(
        {
            "users": [str(u) for u in users],
            "m": partition.m,
            "n": partition.n,
            "flexible": partition.flexible_count,
            "threshold": partition.threshold,
            "mode": scenario.threshold.mode.value,
            "capacities": capacities.to_dict(),
            "full_channel_bps": {str(u): c for u, c in full_channel.items()},
        }
    )

    write_csv(ratio_frame(alloc.ranking), join(cfg.out, RATIO_FILENAME), digest)
    write_json(report, join(cfg.out, ALLOCATION_FILENAME), digest)

    log.info(
        "Partition at T=%.3f: m=%d, n=%d, flexible=%d",
        partition.threshold,
        partition.m,
        partition.n,
        partition.flexible_count,
    )
    for user, c in capacities.per_user.items():
        log.info("User %s: %d blocks, %.2f Mbps", user, alloc.count_of(user), c / 1e6)
    log.info("Total %.2f Mbps", capacities.total / 1e6)
    if alloc.unmet_demand:
        log.warning("Unmet demand (blocks): %r", alloc.unmet_demand)

    log.debug(timing)
    return ExitStatus.SUCCESS
