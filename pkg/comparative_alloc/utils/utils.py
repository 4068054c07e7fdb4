"""Utilities."""

import argparse
import hashlib
import logging
import os
from os.path import join

import numpy as np
from colorlog import ColoredFormatter

from comparative_alloc.utils.typing import Config, UserId

# Logging

log = logging.getLogger("ca")
log.setLevel(logging.DEBUG)
log.handlers = []  # No duplicated handlers
log.propagate = False  # workaround for duplicated logs in ipython
log_level = logging.DEBUG

stream_handler = logging.StreamHandler()
stream_handler.setLevel(log_level)

stream_formatter = ColoredFormatter(
    "%(log_color)s[%(asctime)s][%(process)05d] %(message)s",
    datefmt=None,
    reset=True,
    log_colors={
        "DEBUG": "cyan",
        "INFO": "white,bold",
        "WARNING": "yellow",
        "ERROR": "red,bold",
        "CRITICAL": "red,bg_white",
    },
    secondary_log_colors={},
    style="%",
)
stream_handler.setFormatter(stream_formatter)
log.addHandler(stream_handler)

LOG_FILENAME = "ca_log.txt"


def has_file_handler() -> bool:
    for handler in log.handlers:
        if isinstance(handler, logging.FileHandler):
            return True
    return False


def init_file_logger(cfg: Config) -> None:
    if not cfg.log_to_file:
        return

    if has_file_handler():
        return

    file_handler = logging.FileHandler(join(output_dir(cfg), LOG_FILENAME))
    file_handler.setLevel(log_level)
    file_formatter = logging.Formatter(fmt="[%(asctime)s][%(process)05d] %(message)s", datefmt=None, style="%")
    file_handler.setFormatter(file_formatter)
    log.addHandler(file_handler)


def static_vars(**kwargs):
    def decorate(func):
        for k in kwargs:
            setattr(func, k, kwargs[k])
        return func

    return decorate


@static_vars(history=dict())
def log_every_n(n, _level, msg, *args, **kwargs):
    """
    Log message `msg` once in n calls to this function to avoid log spam.
    Use only msg to count the calls, not args and kwargs.
    """
    if msg not in log_every_n.history:
        log_every_n.history[msg] = 0

    num_msgs = log_every_n.history[msg]
    if num_msgs % n == 0:
        msg_with_ntimes = f"{msg} ({num_msgs} times)" if num_msgs > 1 else msg
        log.log(_level, msg_with_ntimes, *args, **kwargs)

    log_every_n.history[msg] += 1


def debug_log_every_n(n, msg, *args, **kwargs):
    log_every_n(n, logging.DEBUG, msg, *args, **kwargs)


# CLI args


def str2bool(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, str) and v.lower() in ("true",):
        return True
    elif isinstance(v, str) and v.lower() in ("false",):
        return False
    else:
        raise argparse.ArgumentTypeError("Boolean value expected")


def str2floats(v):
    """Comma-separated list of floats, e.g. --noise_power=0.1,0.2"""
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    try:
        return [float(x) for x in str(v).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Comma-separated list of numbers expected, got {v!r}")


def str2ints(v):
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]
    try:
        return [int(x) for x in str(v).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Comma-separated list of integers expected, got {v!r}")


def str2strs(v):
    if isinstance(v, (list, tuple)):
        return [str(x) for x in v]
    return [x.strip() for x in str(v).split(",") if x.strip()]


# seeding

UINT64_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer, a bijective 64-bit mix."""
    z = (x + 0x9E3779B97F4A7C15) & UINT64_MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & UINT64_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & UINT64_MASK
    return z ^ (z >> 31)


def derive_seed(root_seed: int, index: int) -> int:
    """Child seed for the index-th trial/user/level. Independent of evaluation order."""
    return splitmix64((int(root_seed) + int(index)) & UINT64_MASK)


def user_hash(user_id: UserId) -> int:
    """Stable across processes and platforms, unlike hash()."""
    digest = hashlib.sha256(str(user_id).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    entropy = [int(seed) & UINT64_MASK] + [int(k) & UINT64_MASK for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


# working with filesystem


def ensure_dir_exists(path) -> str:
    if not os.path.exists(path):
        os.makedirs(path, exist_ok=True)
    return path


def maybe_ensure_dir_exists(path, mkdir: bool) -> str:
    if mkdir:
        return ensure_dir_exists(path)
    else:
        return path


def output_dir(cfg: Config, mkdir: bool = True) -> str:
    return maybe_ensure_dir_exists(cfg.out, mkdir)


def seed_suffixed(filename: str, seed: int) -> str:
    """curve_ca.csv -> curve_ca_s7.csv"""
    stem, ext = os.path.splitext(filename)
    return f"{stem}_s{seed}{ext}"
