"""``scaling``: sequence length L against chromatic number per code family."""

import argparse
import logging
from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from twirlc import storage  # noqa: E402
from twirlc.api.common import add_out_argument  # noqa: E402
from twirlc.core.dd_compiler import (  # noqa: E402
    ScalingFamily,
    ScalingRow,
    cross_check_scaling,
    scaling_table,
)
from twirlc.core.errors import EXIT_COUNTEREXAMPLE, EXIT_OK, InvalidInputError  # noqa: E402

logger = logging.getLogger(__name__)

REFERENCE_COLUMNS = ("baseline_4chi", "chi_power", "chi_power_log")


def register(subparsers) -> None:
    parser = subparsers.add_parser("scaling", help="tabulate L(chi) for the code families")
    parser.add_argument(
        "--families",
        default=",".join(f.value for f in ScalingFamily),
        help="comma-separated family names",
    )
    parser.add_argument("--chi-min", type=int, default=1)
    parser.add_argument("--chi-max", type=int, default=64)
    parser.add_argument("--references", action="store_true", help="add reference curve columns")
    parser.add_argument("--cross-check", type=int, metavar="CHI_MAX", help="build codes up to CHI_MAX and compare")
    parser.add_argument("--plot", type=Path, help="write a PNG plot")
    add_out_argument(parser, "scaling.csv")
    parser.set_defaults(handler=cmd_scaling)


def parse_families(text: str) -> List[ScalingFamily]:
    families = []
    for name in text.split(","):
        try:
            families.append(ScalingFamily(name.strip()))
        except ValueError as exc:
            raise InvalidInputError(f"Unknown family {name!r}") from exc
    return families


def plot_rows(rows: List[ScalingRow], path: Path, references: bool) -> Path:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for family in dict.fromkeys(r.family for r in rows):
        points = [r for r in rows if r.family == family]
        ax.plot([r.chi for r in points], [r.length for r in points], marker="o", ms=3, label=family.value)
    if references and rows:
        chis = sorted({r.chi for r in rows})
        ax.plot(chis, [4 * c for c in chis], "k--", lw=1, label="4 chi")
        ax.plot(chis, [c * c for c in chis], "k:", lw=1, label="chi^2")
    ax.set_xlabel("chromatic number chi")
    ax.set_ylabel("sequence length L")
    ax.set_yscale("log", base=2)
    ax.legend(fontsize=7)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Wrote scaling plot to {path}")
    return path


def cmd_scaling(args: argparse.Namespace) -> int:
    if args.chi_min < 1 or args.chi_max < args.chi_min:
        raise InvalidInputError("Need 1 <= chi-min <= chi-max")
    chis = range(args.chi_min, args.chi_max + 1)
    single = args.chi_min == args.chi_max
    rows: List[ScalingRow] = []
    for family in parse_families(args.families):
        rows.extend(scaling_table(family, chis, skip_unsupported=not single, references=args.references))

    header = ["family", "chi", "generators", "L"]
    if args.references:
        header += list(REFERENCE_COLUMNS)
    table = []
    for r in rows:
        line = [r.family.value, r.chi, r.generators, r.length]
        if args.references:
            line += [f"{r.references[c]:.4f}" for c in REFERENCE_COLUMNS]
        table.append(line)
    storage.write_csv(args.out, header, table)
    print(f"{len(rows)} rows -> {args.out}")
    if args.plot:
        plot_rows(rows, args.plot, args.references)

    status: Optional[int] = None
    if args.cross_check:
        checks = cross_check_scaling(args.cross_check)
        storage.write_csv(
            args.out.with_name(args.out.stem + "_crosscheck.csv"),
            ["family", "chi", "formula_L", "measured_L", "match"],
            [[c.family.value, c.chi, c.formula_length, c.measured_length, c.match] for c in checks],
        )
        mismatches = [c for c in checks if not c.match]
        print(f"cross-check: {len(checks) - len(mismatches)}/{len(checks)} match")
        status = EXIT_COUNTEREXAMPLE if mismatches else None
    return status if status is not None else EXIT_OK
