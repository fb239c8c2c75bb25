"""``verify``: check a code file against a device's quotient terms."""

import argparse
import logging
from pathlib import Path

from twirlc import storage
from twirlc.api.common import add_device_arguments, add_out_argument, colored_device, parse_model
from twirlc.core.dd_compiler import DDGroup, TermSet, check_bounded, check_terms
from twirlc.core.device_graph import model_terms
from twirlc.core.errors import EXIT_COUNTEREXAMPLE, EXIT_OK, InvalidInputError
from twirlc.core.interactions import ControlMode

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="classify every quotient term under a group")
    parser.add_argument("--code", type=Path, required=True, help="code JSON whose generators form the group")
    add_device_arguments(parser)
    parser.add_argument("--k", type=int, default=2, help="locality of the checked terms")
    parser.add_argument("--mode", default=ControlMode.BANG_BANG.value, choices=[m.value for m in ControlMode])
    parser.add_argument("--complete", action="store_true", help="check every color subset of size <= k")
    add_out_argument(parser, "verdict.json")
    parser.set_defaults(handler=cmd_verify)


def cmd_verify(args: argparse.Namespace) -> int:
    code = storage.load_code(args.code)
    colored = colored_device(args.device, None, args.seed_order)
    q = colored.quotient
    if code.n != q.chi:
        raise InvalidInputError(f"Code has {code.n} columns, quotient has {q.chi} colors")
    group = DDGroup.from_code(code)
    # --model overrides the checked alphabet on the quotient's hyperedges
    terms = TermSet.suppress(model_terms(q, args.k, parse_model(args.model), args.complete), q.chi)
    if ControlMode(args.mode) == ControlMode.BOUNDED:
        verdict = check_bounded(group, group.generators, terms)
    else:
        verdict = check_terms(group, terms)
    storage.save_verdict(args.out, verdict, group)
    if not verdict.ok:
        failure = verdict.first_failure
        print(f"counterexample: {(failure.leak or failure.term).to_text()}")
        return EXIT_COUNTEREXAMPLE
    print(f"{code.name}: all {len(terms)} terms suppressed (L={group.size})")
    return EXIT_OK
