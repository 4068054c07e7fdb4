from comparative_alloc.channel.grid import ResourceGrid
from comparative_alloc.channel.multipath import MultipathModel, generate_multipath_channel
from comparative_alloc.channel.response import (
    BlockResponse,
    FrequencyResponse,
    PowerLoading,
    UserNoise,
    aggregate_blocks,
    snr,
)
from comparative_alloc.channel.trace import load_channel_trace, write_channel_trace
