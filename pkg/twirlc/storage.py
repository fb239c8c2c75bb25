"""
File Storage Module.

Reads and writes every file the compiler exchanges: devices, codes,
Hamiltonians, verdicts, reports and CSV tables. Device names without a
path resolve to the bundled library under ``settings.DATA_DIR``.
"""

import csv
import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, List, Optional, Sequence, Union

from pydantic import BaseModel, ValidationError

from twirlc.config import settings
from twirlc.core.code_forge import AdditiveCode, OrthogonalArray
from twirlc.core.dd_compiler import DDGroup, Term, TermRole, TermSet, Verdict
from twirlc.core.device_graph import Coloring, DeviceGraph, Hyperedge
from twirlc.core.errors import InvalidInputError, StorageError
from twirlc.core.field_pauli import PauliString
from twirlc.models import (
    CodeSchema,
    ColoringSchema,
    DeviceSchema,
    HamiltonianSchema,
    SimReportSchema,
    VerdictSchema,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@contextmanager
def file_session(path: PathLike, action: str) -> Iterator[Path]:
    """Wrap one file operation, turning I/O and parse failures into StorageError."""
    target = Path(path)
    try:
        yield target
    except (OSError, json.JSONDecodeError, csv.Error) as exc:
        raise StorageError(f"Cannot {action} {target}: {exc}") from exc
    except ValidationError as exc:
        raise StorageError(f"Invalid content in {target}: {exc.errors()[0]['msg']}") from exc
    except InvalidInputError as exc:
        raise StorageError(f"Invalid content in {target}: {exc.detail}") from exc


def read_json(path: PathLike) -> Any:
    with file_session(path, "read") as target:
        with target.open(encoding="utf-8") as handle:
            return json.load(handle)


def write_json(path: PathLike, data: Any) -> Path:
    with file_session(path, "write") as target:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2)
            handle.write("\n")
    return target


def write_csv(path: PathLike, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
    with file_session(path, "write") as target:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
    return target


def read_csv(path: PathLike) -> List[List[str]]:
    with file_session(path, "read") as target:
        with target.open(newline="", encoding="utf-8") as handle:
            return list(csv.reader(handle))


def write_model(path: PathLike, model: BaseModel) -> Path:
    return write_json(path, model.model_dump(mode="json"))


# Devices


def bundled_names(suffix: str = ".json") -> List[str]:
    return sorted(p.stem for p in settings.DATA_DIR.glob(f"*{suffix}"))


def resolve_path(name_or_path: PathLike) -> Path:
    """A real path wins; otherwise look the name up in the bundled library."""
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = settings.DATA_DIR / f"{path.name}.json"
    if path.suffix == "" and bundled.exists():
        return bundled
    raise StorageError(f"No such file or bundled entry: {name_or_path}")


def device_from_schema(schema: DeviceSchema) -> DeviceGraph:
    edges = [
        Hyperedge.build(edge.sites, edge.model, edge.alphabet) for edge in schema.hyperedges
    ]
    return DeviceGraph.build(
        vertices=schema.vertices,
        hyperedges=[e for e in edges if e.tuples],
        onsite={int(v): letters for v, letters in schema.onsite.items()},
        coloring={int(v): c for v, c in schema.coloring.items()} if schema.coloring else None,
        name=schema.name,
    )


def load_device(name_or_path: PathLike) -> DeviceGraph:
    path = resolve_path(name_or_path)
    data = read_json(path)
    with file_session(path, "parse"):
        device = device_from_schema(DeviceSchema.model_validate(data))
    logger.info(
        f"Loaded device {device.name}: {len(device.vertices)} vertices, "
        f"{len(device.hyperedges)} hyperedges"
    )
    return device


def save_coloring(path: PathLike, device: DeviceGraph, coloring: Coloring) -> Path:
    schema = ColoringSchema(
        device=device.name,
        num_colors=coloring.num_colors,
        coloring={str(v): c for v, c in sorted(coloring.assignment.items())},
    )
    return write_model(path, schema)


def load_seed_order(path: PathLike) -> List[int]:
    data = read_json(path)
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise StorageError(f"Seed order file {path} must hold a list of vertex ids")
    return data


# Codes


def code_to_schema(code: AdditiveCode) -> CodeSchema:
    return CodeSchema(name=code.name, n=code.n, alphabet=code.alphabet, generators=code.texts())


def save_code(path: PathLike, code: AdditiveCode) -> Path:
    return write_model(path, code_to_schema(code))


def load_code(path: PathLike) -> AdditiveCode:
    data = read_json(path)
    with file_session(path, "parse"):
        schema = CodeSchema.model_validate(data)
        strings = tuple(PauliString.from_text(g) for g in schema.generators)
        return AdditiveCode(schema.n, strings, schema.alphabet, schema.name or Path(path).stem)


def save_oa_csv(path: PathLike, oa: OrthogonalArray) -> Path:
    header = [f"c{j + 1}" for j in range(oa.factors)]
    return write_csv(path, header, [list(row) for row in oa.rows])


# Hamiltonians, verdicts, reports


def load_hamiltonian(path: PathLike, role: Optional[str] = None) -> TermSet:
    """Term set from a Hamiltonian file; ``role`` overrides every term's role."""
    data = read_json(resolve_path(path))
    with file_session(path, "parse"):
        schema = HamiltonianSchema.model_validate(data)
        terms = [
            Term(PauliString.from_text(t.pauli), t.coeff, TermRole(role or t.role))
            for t in schema.terms
        ]
        return TermSet.build(terms, schema.n)


def save_hamiltonian(path: PathLike, terms: TermSet) -> Path:
    schema = HamiltonianSchema(
        n=terms.n,
        terms=[
            {"pauli": t.pauli.to_text(), "coeff": t.coefficient, "role": t.role.value}
            for t in terms
        ],
    )
    return write_model(path, schema)


def verdict_to_schema(verdict: Verdict, group: Optional[DDGroup] = None) -> VerdictSchema:
    failure = verdict.first_failure
    return VerdictSchema(
        group=verdict.group,
        mode=verdict.mode.value,
        ok=verdict.ok,
        group_size=group.size if group is not None else None,
        generators=[g.to_text() for g in group.generators] if group is not None else [],
        counterexample=(failure.leak or failure.term).to_text() if failure else None,
        entries=[
            {
                "term": e.term.to_text(),
                "role": e.role.value,
                "status": e.status.value,
                "ok": e.ok,
                "witness": e.witness.to_text() if e.witness else None,
                "leak": e.leak.to_text() if e.leak else None,
            }
            for e in verdict.entries
        ],
    )


def save_verdict(path: PathLike, verdict: Verdict, group: Optional[DDGroup] = None) -> Path:
    return write_model(path, verdict_to_schema(verdict, group))


def save_report(path: PathLike, report: SimReportSchema) -> Path:
    return write_model(path, report)
