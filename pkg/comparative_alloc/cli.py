"""
Usage: python -m comparative_alloc.cli <command> [--config scenario.json] [--seed 1] [--out dir] [flags]

Commands:
    gen-channel     write synthetic channel responses of all users as a trace
    allocate        rank blocks, apply the threshold and allocate them, report capacities
    curve           capacity tradeoff curves and equal-capacity improvements, optionally over many seeds
    oracle-check    check the oracles against each other and measure the optimality gap
"""

import sys
from typing import Callable, Dict, List, Optional

from comparative_alloc.allocate import cmd_allocate
from comparative_alloc.cfg.arguments import parse_cfg, verify_cfg
from comparative_alloc.curve import cmd_curve
from comparative_alloc.errors import AllocError
from comparative_alloc.gen_channel import cmd_gen_channel
from comparative_alloc.oracle_check import cmd_oracle_check
from comparative_alloc.utils.misc import ExitStatus
from comparative_alloc.utils.typing import Config, StatusCode
from comparative_alloc.utils.utils import log

COMMANDS: Dict[str, Callable[[Config], StatusCode]] = {
    "gen-channel": cmd_gen_channel,
    "allocate": cmd_allocate,
    "curve": cmd_curve,
    "oracle-check": cmd_oracle_check,
}


def run_command(command: str, argv: List[str]) -> StatusCode:
    if command not in COMMANDS:
        log.error("Unknown command %r, choose from %s", command, ", ".join(COMMANDS))
        return ExitStatus.VALIDATION_FAILURE

    try:
        cfg = parse_cfg(argv)
        if not verify_cfg(cfg):
            log.error("Invalid configuration, see the errors above")
            return ExitStatus.VALIDATION_FAILURE
        return COMMANDS[command](cfg)
    except AllocError as e:
        log.error("%s: %s", type(e).__name__, e)
        return e.exit_status
    except ValueError as e:
        log.error("Invalid input: %s", e)
        return ExitStatus.VALIDATION_FAILURE
    except OSError as e:
        log.error("Cannot read or write %s: %s", e.filename, e.strerror)
        return ExitStatus.VALIDATION_FAILURE


def main(argv: Optional[List[str]] = None) -> StatusCode:
    if argv is None:
        argv = sys.argv[1:]

    if not argv or argv[0] in ("-h", "--help"):
        print(__doc__)
        return ExitStatus.SUCCESS if argv else ExitStatus.VALIDATION_FAILURE

    return run_command(argv[0], argv[1:])


if __name__ == "__main__":
    sys.exit(main())
