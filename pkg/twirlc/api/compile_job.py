"""
Compile Command.

Runs the whole pipeline for one job: load and color the device, build the
quotient, select and verify a construction (or synthesize a selective
group), emit the schedule, lift it onto the device and write every
artifact into the output directory.
"""

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from twirlc import storage
from twirlc.api.common import ColoredDevice, add_device_arguments, colored_device
from twirlc.config import settings
from twirlc.core import sequencer
from twirlc.core.dd_compiler import (
    CompileResult,
    TermSet,
    compile_selective,
    compile_target,
)
from twirlc.core.device_graph import lift, model_terms
from twirlc.core.errors import EXIT_COUNTEREXAMPLE, EXIT_OK, CounterexampleError, InvalidInputError
from twirlc.core.interactions import ControlMode, Target
from twirlc.models import JobSchema

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("compile", help="build, verify and emit a decoupling sequence")
    add_device_arguments(parser)
    parser.add_argument("--target", required=True, choices=[t.value for t in Target])
    parser.add_argument("--mode", default=ControlMode.BANG_BANG.value, choices=[m.value for m in ControlMode])
    parser.add_argument("--preserve", type=Path, help="Hamiltonian file of terms to keep")
    parser.add_argument("--suppress", type=Path, help="Hamiltonian file of terms to cancel")
    parser.add_argument("--sign-flip", action="store_true", help="wrap the selective group in a sign-flip cycle")
    parser.add_argument("--out", type=Path, default=settings.DEFAULT_OUT_DIR)
    parser.set_defaults(handler=cmd_compile)


def parse_job(args: argparse.Namespace) -> JobSchema:
    try:
        return JobSchema(
            device=args.device,
            model=args.model,
            target=args.target,
            mode=args.mode,
            preserve=args.preserve,
            suppress=args.suppress,
            seed_order=args.seed_order,
            sign_flip=args.sign_flip,
            out=args.out,
        )
    except ValidationError as exc:
        raise InvalidInputError(f"Invalid job: {exc.errors()[0]['msg']}") from exc


def _selective(job: JobSchema, colored: ColoredDevice) -> CompileResult:
    q = colored.quotient
    preserve = storage.load_hamiltonian(job.preserve, role="preserve")
    if preserve.n != q.chi:
        raise InvalidInputError(f"Preserve file acts on {preserve.n} sites, quotient has {q.chi} colors")
    if job.suppress is not None:
        suppress = storage.load_hamiltonian(job.suppress, role="suppress")
    else:
        kept = set(preserve.strings())
        suppress = TermSet.suppress([t for t in model_terms(q, 2) if t not in kept], q.chi)
    return compile_selective(preserve, suppress, job.mode)


def _emit(job: JobSchema, result: CompileResult, colored: ColoredDevice) -> sequencer.Schedule:
    q = colored.quotient
    if job.sign_flip:
        conjugators = sequencer.sign_flip_conjugators(result.terms.preserved())
        schedule = sequencer.sign_flip_cycle(result.group, conjugators, q.colors)
        return lift(schedule, colored.coloring)
    if job.mode == ControlMode.BOUNDED:
        schedule, _ = sequencer.emit_bounded(
            result.group, result.gammas, result.terms, colored.coloring, q.colors
        )
        return schedule
    return sequencer.emit_bang_bang(result.group, colored.coloring, q.colors)


def cmd_compile(args: argparse.Namespace) -> int:
    job = parse_job(args)
    colored = colored_device(job.device, args.model, job.seed_order)
    out = job.out
    try:
        if job.target == Target.SELECTIVE:
            result = _selective(job, colored)
        else:
            result = compile_target(colored.quotient, job.target, job.mode)
    except CounterexampleError as exc:
        if exc.verdict is not None:
            storage.save_verdict(out / "verdict.json", exc.verdict)
        raise

    storage.save_verdict(out / "verdict.json", result.verdict, result.group)
    storage.save_code(out / "group.json", result.group.code())
    if not result.verdict.ok:
        print(f"verification failed: {result.verdict.first_failure.term}")
        return EXIT_COUNTEREXAMPLE

    schedule = _emit(job, result, colored)
    sequencer.export(schedule, "json", out / "schedule.json")
    sequencer.export(schedule, "csv", out / "schedule.csv")
    if schedule.lifted is not None:
        sequencer.export(schedule, "lifted-csv", out / "lifted.csv")
    print(
        f"{job.target.value}/{job.mode.value}: {result.construction}, "
        f"{result.group.dimension} generators, L={schedule.cycle_length} -> {out}"
    )
    return EXIT_OK
