import argparse
import copy
import hashlib
import json
import os
import re
import sys
from typing import Any, Dict, List, Optional, Tuple

from comparative_alloc.cfg.cfg import (
    add_alloc_args,
    add_basic_cli_args,
    add_channel_args,
    add_curve_args,
    add_grid_args,
    add_link_args,
    add_oracle_args,
)
from comparative_alloc.errors import ValidationError
from comparative_alloc.utils.attr_dict import AttrDict
from comparative_alloc.utils.typing import Config
from comparative_alloc.utils.utils import log, str2bool, str2floats, str2ints, str2strs

# run-time knobs that do not change what is computed, excluded from the scenario and its digest
NON_SCENARIO_KEYS = ("help", "config", "out", "log_to_file", "command_line", "cli_args")

CURVE_STRATEGIES = ("ca", "anti_ca", "random")


def parse_ca_args(argv: Optional[List[str]] = None) -> Tuple[argparse.ArgumentParser, argparse.Namespace]:
    """
    Create a parser with every scenario argument (see cfg.py) and parse the known arguments.
    All subcommands share one scenario, so a single config file can drive all of them.

    argv: list of arguments to parse. If None, use sys.argv.
    returns: (parser, args)
    """
    if argv is None:
        argv = sys.argv[1:]

    p = argparse.ArgumentParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter, add_help=False)
    add_basic_cli_args(p)
    add_grid_args(p)
    add_channel_args(p)
    add_link_args(p)
    add_alloc_args(p)
    add_curve_args(p)
    add_oracle_args(p)

    args, _ = p.parse_known_args(argv)
    return p, args


def parse_full_cfg(parser: argparse.ArgumentParser, argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Given a parser, parse all arguments and return the final configuration."""
    if argv is None:
        argv = sys.argv[1:]

    args = parser.parse_args(argv)
    args = postprocess_args(args, argv, parser)
    return args


def postprocess_args(args, argv, parser) -> argparse.Namespace:
    if args.help:
        parser.print_help()
        sys.exit(0)

    args.command_line = " ".join(argv)

    # Re-parse with every default set to None. Since None cannot be passed from the command line, whatever is
    # not None was given explicitly, and values from the config file must not override it.
    no_defaults_parser = copy.deepcopy(parser)
    for arg_name in vars(args).keys():
        no_defaults_parser.set_defaults(**{arg_name: None})
    cli_args = no_defaults_parser.parse_args(argv)

    for arg_name in list(vars(cli_args).keys()):
        if cli_args.__dict__[arg_name] is None:
            del cli_args.__dict__[arg_name]

    args.cli_args = vars(cli_args)
    return args


def cfg_dict(cfg: Config) -> AttrDict:
    if isinstance(cfg, dict):
        return AttrDict(cfg)
    else:
        return AttrDict(vars(cfg))


def _key_line(text: str, key: str) -> Optional[int]:
    pattern = re.compile(rf'"{re.escape(key)}"\s*:')
    for i, line in enumerate(text.splitlines()):
        if pattern.search(line):
            return i + 1
    return None


def _coerce(action: argparse.Action, value: Any) -> Any:
    """Run a JSON value through the same conversion and choices as the matching command-line flag."""
    if value is None:
        return None
    if isinstance(value, bool) and action.type is not str2bool:
        raise TypeError(f"unexpected boolean {value}")
    if isinstance(value, list) and action.type not in (str2floats, str2ints, str2strs):
        raise TypeError(f"unexpected list {value}")
    if action.type is int and isinstance(value, float) and not value.is_integer():
        raise TypeError(f"expected an integer, got {value}")

    if action.type is not None:
        value = action.type(value)
    if action.choices is not None and value not in action.choices:
        raise ValueError(f"{value!r} is not one of {list(action.choices)}")
    return value


def load_cfg_file(cfg: Config, parser: argparse.ArgumentParser) -> AttrDict:
    """
    Layer the JSON scenario file named by `cfg.config` under the command line: file values replace defaults,
    flags passed on the command line stay. Problems are reported with the line they occur on.
    """
    cfg = cfg_dict(cfg)
    if not cfg.config:
        return cfg

    path = cfg.config
    if not os.path.isfile(path):
        raise ValidationError(f"Config file {path} does not exist")

    with open(path, "r") as f:
        text = f.read()

    try:
        params = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: {e.msg} (column {e.colno})", line=e.lineno)

    if not isinstance(params, dict):
        raise ValidationError(f"{path}: expected a JSON object of key/value pairs", line=1)

    actions = {a.dest: a for a in parser._actions}
    for key, value in params.items():
        line = _key_line(text, key)
        if key not in actions or key in ("help", "config"):
            raise ValidationError(f"{path}: unknown parameter {key!r}", line=line)

        try:
            value = _coerce(actions[key], value)
        except (argparse.ArgumentTypeError, TypeError, ValueError) as e:
            raise ValidationError(f"{path}: bad value for {key!r}: {e}", line=line)

        if key in cfg.cli_args:
            log.debug("Keeping %s=%r from the command line over %r from %s", key, cfg[key], value, path)
            continue
        cfg[key] = value

    log.info("Loaded scenario parameters from %s", path)
    return cfg


def scenario_dict(cfg: Config) -> Dict[str, Any]:
    """Everything that affects the computed results, JSON-friendly."""
    cfg = cfg_dict(cfg)
    return {k: v for k, v in sorted(cfg.items()) if k not in NON_SCENARIO_KEYS}


def cfg_digest(cfg: Config) -> str:
    canonical = json.dumps(scenario_dict(cfg), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def save_cfg(cfg: Config, path: str) -> str:
    with open(path, "w") as f:
        json.dump(scenario_dict(cfg), f, indent=4, sort_keys=True)
        f.write("\n")
    return path


def verify_cfg(cfg: Config) -> bool:
    """
    Check that the configuration describes a valid scenario. Every problem is logged, so a user sees all of them
    at once. Per-user lists are checked against --num_users for synthetic channels only, trace runs check them
    once the trace is loaded.
    """
    good_config: bool = True

    def cfg_error(msg: str) -> None:
        nonlocal good_config
        good_config = False
        log.error(msg)

    if cfg.subcarrier_count <= 0 or cfg.block_size <= 0:
        cfg_error(f"{cfg.subcarrier_count=} and {cfg.block_size=} must be positive")
    elif cfg.subcarrier_count % cfg.block_size != 0:
        cfg_error(f"{cfg.subcarrier_count=} must be a multiple of {cfg.block_size=}")
    if not cfg.subcarrier_spacing > 0:
        cfg_error(f"{cfg.subcarrier_spacing=} must be positive")
    if cfg.seed < 0:
        cfg_error(f"{cfg.seed=} must be a non-negative 64-bit integer")

    if cfg.channel_source == "trace":
        if not cfg.trace_path:
            cfg_error("--channel_source=trace needs --trace_path")
        elif not os.path.isfile(cfg.trace_path):
            cfg_error(f"Trace file {cfg.trace_path} does not exist")
    else:
        if cfg.num_users < 2:
            cfg_error(f"{cfg.num_users=} must be at least 2")
        if cfg.user_seeds is not None and len(cfg.user_seeds) != cfg.num_users:
            cfg_error(f"--user_seeds has {len(cfg.user_seeds)} values for {cfg.num_users} users")
        if cfg.tap_count < 1:
            cfg_error(f"{cfg.tap_count=} must be positive")
        if not cfg.delay_spread > 0 or (cfg.max_delay is not None and not cfg.max_delay > 0):
            cfg_error(f"{cfg.delay_spread=} and {cfg.max_delay=} must be positive")
        if not cfg.rician_k >= 0:
            cfg_error(f"{cfg.rician_k=} must be non-negative")
        if len(cfg.noise_power) not in (1, cfg.num_users):
            cfg_error(f"--noise_power needs 1 or {cfg.num_users} values, got {len(cfg.noise_power)}")
        if cfg.demand is not None and len(cfg.demand) != cfg.num_users:
            cfg_error(f"--demand has {len(cfg.demand)} values for {cfg.num_users} users")

    if len(cfg.noise_power) == 0 or any(not n > 0 for n in cfg.noise_power):
        cfg_error(f"Noise powers must be positive, got {cfg.noise_power}")
    if not cfg.power_loading > 0:
        cfg_error(f"{cfg.power_loading=} must be positive")
    if cfg.loading_path is not None and not os.path.isfile(cfg.loading_path):
        cfg_error(f"Power loading file {cfg.loading_path} does not exist")

    if not cfg.threshold >= 1.0:
        cfg_error(f"{cfg.threshold=} must be at least 1")
    if cfg.demand is not None:
        if any(not 0 <= d <= 1 for d in cfg.demand):
            cfg_error(f"Demand fractions must lie in [0, 1], got {cfg.demand}")
        elif sum(cfg.demand) > 1:
            cfg_error(f"Demand fractions add up to {sum(cfg.demand)} > 1")

    unknown = [s for s in cfg.strategies if s not in CURVE_STRATEGIES]
    if unknown or not cfg.strategies:
        cfg_error(f"Unknown curve strategies {unknown}, choose from {list(CURVE_STRATEGIES)}")
    if cfg.random_trials < 2:
        cfg_error(f"{cfg.random_trials=} must be at least 2")
    if cfg.num_channel_seeds < 1:
        cfg_error(f"{cfg.num_channel_seeds=} must be positive")

    if cfg.min_n < 1 or cfg.min_n > cfg.max_n:
        cfg_error(f"Need 1 <= {cfg.min_n=} <= {cfg.max_n=}")
    if cfg.oracle_instances < 1:
        cfg_error(f"{cfg.oracle_instances=} must be positive")

    return good_config


def default_cfg(argv: Optional[List[str]] = None) -> AttrDict:
    """Useful for tests."""
    argv = [] if argv is None else argv
    parser, _ = parse_ca_args(argv)
    return cfg_dict(parse_full_cfg(parser, argv))


def parse_cfg(argv: Optional[List[str]] = None) -> AttrDict:
    """Command line plus the optional config file, the final configuration of a run."""
    if argv is None:
        argv = sys.argv[1:]
    parser, _ = parse_ca_args(argv)
    cfg = parse_full_cfg(parser, argv)
    return load_cfg_file(cfg, parser)
