from os.path import join

import numpy as np

from comparative_alloc.cfg.scenario import init_run, make_channels, make_grid
from comparative_alloc.channel.trace import write_channel_trace
from comparative_alloc.errors import ValidationError
from comparative_alloc.utils.misc import ExitStatus
from comparative_alloc.utils.timing import Timing
from comparative_alloc.utils.typing import Config, StatusCode
from comparative_alloc.utils.utils import log

TRACE_FILENAME = "channel_trace.csv"


def cmd_gen_channel(cfg: Config) -> StatusCode:
    """Write a synthetic trace for all users. The config.json written next to it records the grid."""
    if cfg.channel_source != "synthetic":
        raise ValidationError("gen-channel generates synthetic channels, use --channel_source=synthetic")

    digest = init_run(cfg)
    timing = Timing("gen-channel")

    grid = make_grid(cfg)
    with timing.timeit("generate"):
        channels = make_channels(cfg, grid)
    with timing.timeit("write"):
        path = write_channel_trace(channels, join(cfg.out, TRACE_FILENAME), digest)

    for channel in channels:
        magnitude = channel.magnitude()
        rms = float(np.sqrt(np.mean(magnitude**2)))
        log.info(
            "User %s: RMS |h| %.4f (%.2f dB), min %.2f dB, max %.2f dB",
            channel.user_id,
            rms,
            20.0 * np.log10(rms),
            float(np.min(channel.magnitude_db())),
            float(np.max(channel.magnitude_db())),
        )

    log.info("Saved %d users x %d subcarriers to %s", len(channels), grid.subcarrier_count, path)
    log.debug(timing)
    return ExitStatus.SUCCESS
