"""``simulate``: dense numerical check of a schedule or the Kitaev identities."""

import argparse
import logging
from itertools import combinations
from pathlib import Path

from twirlc import storage
from twirlc.api.common import add_out_argument, parse_deltas
from twirlc.core import oracle_sim, sequencer
from twirlc.core.device_graph import QuotientGraph
from twirlc.core.errors import EXIT_COUNTEREXAMPLE, EXIT_OK, InvalidInputError
from twirlc.core.interactions import InteractionModel, default_onsite, model_tuples

logger = logging.getLogger(__name__)

DEFAULT_DELTAS = "0.01,0.02,0.04,0.08"


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="dense stroboscopic simulation at desk scale")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--schedule", type=Path, help="schedule JSON written by compile")
    source.add_argument("--sequence", choices=sorted(sequencer.NAMED_SEQUENCES))
    source.add_argument("--kitaev", action="store_true", help="check the folded Kitaev identities")
    parser.add_argument("--hamiltonian", type=Path, help="Hamiltonian JSON (default: random 2-local)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--deltas", default=DEFAULT_DELTAS, help="comma-separated slot durations")
    add_out_argument(parser, "report.json")
    parser.set_defaults(handler=cmd_simulate)


def all_pairs_quotient(n: int) -> QuotientGraph:
    """Every site pair coupled by every two-body Pauli product."""
    colors = tuple(range(1, n + 1))
    pairs = model_tuples(InteractionModel.ALL, 2)
    return QuotientGraph(
        colors=colors,
        hyperedges={pair: pairs for pair in combinations(colors, 2)},
        onsite={c: default_onsite() for c in colors},
    )


def load_schedule(args: argparse.Namespace) -> sequencer.Schedule:
    if args.sequence:
        return sequencer.named_sequence(args.sequence)
    data = storage.read_json(args.schedule)
    with storage.file_session(args.schedule, "parse"):
        return sequencer.parse_schedule(data)


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.kitaev:
        report = oracle_sim.kitaev_verify()
    else:
        schedule = load_schedule(args)
        n = len(schedule.device_frames()[0].to_text())
        if args.hamiltonian:
            terms = storage.load_hamiltonian(args.hamiltonian)
            if terms.n != n:
                raise InvalidInputError(f"Hamiltonian acts on {terms.n} qubits, schedule on {n}")
        else:
            terms = oracle_sim.random_local_hamiltonian(all_pairs_quotient(n), 2, seed=args.seed)
        h = oracle_sim.build_hamiltonian(terms)
        report = oracle_sim.stroboscopic_error(schedule, h, parse_deltas(args.deltas))

    storage.save_report(args.out, report.to_schema())
    if report.slope is not None:
        print(f"{report.name}: slope {report.slope:.3f}")
    for key, value in report.residuals.items():
        print(f"{report.name}: {key} residual {value:.2e}")
    if not report.ok:
        print(f"{report.name}: check failed")
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK
