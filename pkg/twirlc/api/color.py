"""``color``: color a device and write the coloring."""

import argparse
import logging

from twirlc import storage
from twirlc.api.common import add_device_arguments, add_out_argument, colored_device
from twirlc.core.errors import EXIT_OK

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("color", help="color a device (supplied coloring or DSATUR)")
    add_device_arguments(parser)
    add_out_argument(parser, "coloring.json")
    parser.set_defaults(handler=cmd_color)


def cmd_color(args: argparse.Namespace) -> int:
    colored = colored_device(args.device, args.model, args.seed_order)
    storage.save_coloring(args.out, colored.device, colored.coloring)
    print(f"{colored.device.name}: {colored.coloring.num_colors} colors -> {args.out}")
    return EXIT_OK
