import os
from argparse import ArgumentParser
from os.path import join

from comparative_alloc.utils.misc import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_CENTER_FREQUENCY,
    DEFAULT_SUBCARRIER_COUNT,
    DEFAULT_SUBCARRIER_SPACING,
    DEFAULT_THRESHOLD,
)
from comparative_alloc.utils.utils import str2bool, str2floats, str2ints, str2strs


def add_basic_cli_args(p: ArgumentParser):
    p.add_argument("-h", "--help", action="store_true", help="Print the help message", required=False)
    p.add_argument(
        "--config",
        default=None,
        type=str,
        help="JSON file with scenario parameters. Values in the file override defaults, "
        "flags passed on the command line override the file.",
    )
    p.add_argument(
        "--seed",
        default=1,
        type=int,
        help="Root seed. All randomness (channels, random baselines, oracle instances) is derived from it",
    )
    p.add_argument("--out", default=join(os.getcwd(), "ca_out"), type=str, help="Directory for all output files")
    p.add_argument(
        "--log_to_file", default=False, type=str2bool, help="Also write the log into ca_log.txt in the output dir"
    )


def add_grid_args(p: ArgumentParser):
    p.add_argument(
        "--subcarrier_count",
        default=DEFAULT_SUBCARRIER_COUNT,
        type=int,
        help="Number of subcarriers N. Must be a multiple of --block_size",
    )
    p.add_argument(
        "--subcarrier_spacing", default=DEFAULT_SUBCARRIER_SPACING, type=float, help="Subcarrier spacing, Hz"
    )
    p.add_argument(
        "--block_size", default=DEFAULT_BLOCK_SIZE, type=int, help="Subcarriers per resource block, allocated as a unit"
    )
    p.add_argument(
        "--center_frequency",
        default=DEFAULT_CENTER_FREQUENCY,
        type=float,
        help="Carrier frequency, Hz. Only recorded, it does not affect the baseband channel model",
    )


def add_channel_args(p: ArgumentParser):
    p.add_argument(
        "--channel_source",
        default="synthetic",
        choices=["synthetic", "trace"],
        type=str,
        help="Generate tapped-delay-line channels or read them from --trace_path",
    )
    p.add_argument(
        "--trace_path",
        default=None,
        type=str,
        help="Channel trace (user_id,subcarrier_index,real,imag) used when --channel_source=trace",
    )
    p.add_argument(
        "--magnitude_only",
        default=False,
        type=str2bool,
        help="Trace holds user_id,subcarrier_index,magnitude rows, phase is set to zero",
    )
    p.add_argument("--num_users", default=2, type=int, help="Number of users. More than 2 runs multi-user allocation")
    p.add_argument(
        "--user_seeds",
        default=None,
        type=str2ints,
        help="Comma-separated channel seed per user, e.g. 3,7. By default every user draws from --seed "
        "(channels of different users are still independent)",
    )
    p.add_argument("--tap_count", default=8, type=int, help="Taps of the synthetic tapped-delay-line channel")
    p.add_argument(
        "--delay_spread", default=100e-9, type=float, help="Decay constant of the exponential power-delay profile, s"
    )
    p.add_argument(
        "--max_delay",
        default=None,
        type=float,
        help="Delay of the last tap, s. By default the taps cover 5 delay spreads, at most 0.75 delay spreads apart",
    )
    p.add_argument(
        "--rician_k",
        default=5.0,
        type=float,
        help="Power ratio of the line-of-sight component to the scattered ones. 0 is pure Rayleigh fading",
    )


def add_link_args(p: ArgumentParser):
    p.add_argument(
        "--noise_power",
        default=[0.125],
        type=str2floats,
        help="Noise power per subcarrier, linear. One value for all users or a comma-separated value per user. "
        "With unit channel gain and loading the default is a mean SNR of about 9 dB",
    )
    p.add_argument("--power_loading", default=1.0, type=float, help="Flat power loading coefficient")
    p.add_argument(
        "--loading_path",
        default=None,
        type=str,
        help="CSV with block_index,coefficient rows, overrides --power_loading",
    )


def add_alloc_args(p: ArgumentParser):
    p.add_argument(
        "--threshold",
        default=DEFAULT_THRESHOLD,
        type=float,
        help="Minimum advantage ratio that hard-assigns a block. Blocks below it in both directions are flexible",
    )
    p.add_argument(
        "--mode",
        default="channel_response",
        choices=["channel_response", "efficiency_ratio"],
        type=str,
        help="Rank blocks by |h1|/|h2| (independent of loading and noise) or by spectral efficiency ratios",
    )
    p.add_argument(
        "--demand",
        default=None,
        type=str2floats,
        help="Comma-separated fraction of blocks each user needs, e.g. 0.6,0.2. Served from flexible blocks only",
    )
    p.add_argument(
        "--clustering",
        default="response_based",
        choices=["response_based", "random"],
        type=str,
        help="How users are split into two groups at every level of multi-user allocation",
    )


def add_curve_args(p: ArgumentParser):
    p.add_argument(
        "--strategies",
        default=["ca", "anti_ca", "random"],
        type=str2strs,
        help="Comma-separated tradeoff curve strategies: ca, anti_ca, random",
    )
    p.add_argument(
        "--random_trials", default=200, type=int, help="Random allocations averaged per split for the random curve"
    )
    p.add_argument(
        "--num_channel_seeds",
        default=1,
        type=int,
        help="Evaluate this many channel realizations (seeds --seed, --seed+1, ...) and summarize the improvements",
    )


def add_oracle_args(p: ArgumentParser):
    p.add_argument("--min_n", default=4, type=int, help="Smallest down-sampled block count of an oracle instance")
    p.add_argument(
        "--max_n",
        default=12,
        type=int,
        help="Largest down-sampled block count of an oracle instance. Exhaustive search refuses more than 20",
    )
    p.add_argument("--oracle_instances", default=50, type=int, help="Random instances checked against the oracle")
