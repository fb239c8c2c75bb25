"""``codes``: emit a named construction as a code file and optional OA table."""

import argparse
import logging
from pathlib import Path
from typing import Callable, Dict, Optional

from twirlc import storage
from twirlc.api.common import add_out_argument
from twirlc.core import code_forge
from twirlc.core.code_forge import AdditiveCode
from twirlc.core.errors import EXIT_OK, InvalidInputError

logger = logging.getLogger(__name__)

ChiBuilder = Callable[[int], AdditiveCode]

# Constructions parameterized by the number of colors.
SIZED: Dict[str, ChiBuilder] = {
    "rm-universal": code_forge.rm_universal_for,
    "rm-punctured": code_forge.rm_punctured_for,
    "rm-bounded": lambda chi: code_forge.rm_bounded(chi, "universal"),
    "rm-bounded-zz": lambda chi: code_forge.rm_bounded(chi, "zz"),
    "linear-pg": code_forge.linear_pg_code_for,
    "additive-pg": code_forge.additive_pg_code,
    "universal3": code_forge.universal3_code,
    "heisenberg": lambda chi: code_forge.heisenberg_expand(code_forge.additive_pg_code(chi)),
}

FIXED: Dict[str, Callable[[], AdditiveCode]] = {
    "hexacode": code_forge.hexacode,
    "spread-pg32": lambda: code_forge.lines_to_code(code_forge.spread_pg32(), "spread_pg32"),
    "chirality4": lambda: code_forge.chirality_expand().four,
    "chirality5": lambda: code_forge.chirality_expand().five,
    "pg22": lambda: code_forge.pg22_sudoku_search().code,
    "pg22-exhaustive": lambda: code_forge.pg22_sudoku_search(exhaustive=True).code,
    "reduced-heisenberg": code_forge.reduced_heisenberg_code,
    "triangle-universal": code_forge.triangle_universal_code,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("codes", help="emit a named code construction")
    parser.add_argument("name", choices=sorted(SIZED) + sorted(FIXED))
    parser.add_argument("--chi", type=int, help="number of colors (sized constructions)")
    parser.add_argument("--oa", type=Path, help="also write the orthogonal array as CSV")
    add_out_argument(parser, "code.json")
    parser.set_defaults(handler=cmd_codes)


def build_named(name: str, chi: Optional[int] = None) -> AdditiveCode:
    if name in FIXED:
        return FIXED[name]()
    if name not in SIZED:
        raise InvalidInputError(f"Unknown construction {name!r}")
    if chi is None or chi < 1:
        raise InvalidInputError(f"Construction {name} needs --chi >= 1")
    return SIZED[name](chi)


def cmd_codes(args: argparse.Namespace) -> int:
    code = build_named(args.name, args.chi)
    storage.save_code(args.out, code)
    d_perp = code_forge.dual_distance(code)
    print(f"{code.name}: n={code.n}, {code.dimension} generators, L={code.size}, dual distance {d_perp}")
    for text in code.texts():
        print(f"  {text}")
    if args.oa:
        oa = code_forge.to_orthogonal_array(code)
        storage.save_oa_csv(args.oa, oa)
        print(f"OA({oa.runs},{oa.factors},{len(oa.alphabet)},{oa.strength}) -> {args.oa}")
    return EXIT_OK
