"""
twirlc - Command-Line Entry Point

Compiles interaction hypergraphs into verified dynamical-decoupling
schedules: color, compile, verify, scaling, simulate and codes.
"""

import argparse
import logging
import sys
from typing import List, Optional

from twirlc.api import COMMANDS
from twirlc.config import settings
from twirlc.core.errors import TwirlcError
from twirlc.core.middleware import configure_logging, track_job

logger = logging.getLogger(__name__)


def create_application() -> argparse.ArgumentParser:
    """Factory function to create and configure the command parser."""
    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="Dynamical-decoupling compiler for colored interaction graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="root log level")
    parser.add_argument("--debug", action="store_true", default=settings.DEBUG, help="log at DEBUG")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_application()
    args = parser.parse_args(argv)
    configure_logging("DEBUG" if args.debug else args.log_level)
    try:
        with track_job(args.command) as job:
            job.exit_code = args.handler(args)
    except TwirlcError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    return job.exit_code


if __name__ == "__main__":
    sys.exit(main())
