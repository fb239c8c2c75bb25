"""
Sequence Emission Module.

Turns verified decoupling groups into schedules: Gray-ordered bang-bang
frames with single-generator interpulse operations, Eulerian walks of the
Cayley graph for bounded control, and sign-flip conjugation cycles for
Hamiltonian engineering. Also owns the schedule file formats.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from twirlc import storage
from twirlc.core.dd_compiler import (
    DDGroup,
    TermSet,
    Verdict,
    check_bounded,
    kitaev_instance,
)
from twirlc.core.device_graph import Coloring, lift
from twirlc.core.errors import CounterexampleError, InfeasibleError, InvalidInputError
from twirlc.core.field_pauli import PauliString, symplectic_inner
from twirlc.core.interactions import ControlMode
from twirlc.models.schedule import ScheduleSchema

logger = logging.getLogger(__name__)

SCHEDULE_FORMATS = ("json", "csv", "lifted-csv")


@dataclass(frozen=True)
class Schedule:
    """One decoupling cycle at color level, optionally lifted to qubits.

    Bang-bang: ``frames`` are group elements, ``interpulse[j]`` is the pulse
    after slot j. Bounded: ``frames`` are the generator driven in each
    interval, ``labels`` name it and ``visited`` is the group element at
    the start of the interval.
    """

    mode: ControlMode
    colors: Tuple[int, ...]
    frames: Tuple[PauliString, ...]
    interpulse: Tuple[PauliString, ...] = ()
    labels: Tuple[str, ...] = ()
    visited: Tuple[PauliString, ...] = ()
    generators: Tuple[PauliString, ...] = ()
    lifted: Optional[Mapping[int, Tuple[str, ...]]] = field(default=None, hash=False)
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def cycle_length(self) -> int:
        return len(self.frames)

    def slot_strings(self) -> List[PauliString]:
        return list(self.frames)

    def device_frames(self) -> List[PauliString]:
        """Slot strings on physical qubits (sorted ids) when lifted."""
        if self.lifted is None:
            return self.slot_strings()
        qubits = sorted(self.lifted)
        return [
            PauliString.on_sites(
                len(qubits), {i: self.lifted[q][slot] for i, q in enumerate(qubits)}
            )
            for slot in range(self.cycle_length)
        ]


def _default_colors(n: int, colors: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if colors is None:
        return tuple(range(1, n + 1))
    if len(colors) != n:
        raise InvalidInputError(f"{len(colors)} color ids for {n} columns")
    return tuple(colors)


def gray_order(g: DDGroup) -> List[PauliString]:
    """Reflected Gray sequence over generator exponent vectors."""
    frames = []
    for index in range(g.size):
        gray = index ^ (index >> 1)
        element = PauliString.identity(g.n)
        for j, gamma in enumerate(g.generators):
            if (gray >> j) & 1:
                element = element * gamma
        frames.append(element)
    return frames


def interpulse_ops(frames: Sequence[PauliString]) -> List[PauliString]:
    return [frames[(j + 1) % len(frames)] * frames[j] for j in range(len(frames))]


def emit_bang_bang(
    g: DDGroup,
    coloring: Optional[Coloring] = None,
    colors: Optional[Sequence[int]] = None,
) -> Schedule:
    frames = gray_order(g)
    schedule = Schedule(
        mode=ControlMode.BANG_BANG,
        colors=_default_colors(g.n, colors),
        frames=tuple(frames),
        interpulse=tuple(interpulse_ops(frames)),
        generators=g.generators,
        name=g.name,
    )
    logger.info(f"Bang-bang schedule {g.name}: L={schedule.cycle_length}")
    return lift(schedule, coloring) if coloring is not None else schedule


def cayley_graph(g: DDGroup, gammas: Sequence[PauliString]) -> nx.MultiDiGraph:
    """Elements as vertices, an edge e -> gamma*e labeled by each generator index."""
    graph = nx.MultiDiGraph()
    elements = g.elements()
    graph.add_nodes_from(elements)
    for element in elements:
        for i, gamma in enumerate(gammas):
            graph.add_edge(element, gamma * element, key=i, label=i)
    return graph


@dataclass(frozen=True)
class CayleyWalk:
    vertices: Tuple[PauliString, ...]
    labels: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.labels)


def cayley_cycle(g: DDGroup, gammas: Sequence[PauliString]) -> CayleyWalk:
    """Eulerian circuit of the Cayley graph from the identity.

    Raises:
        InvalidInputError: gammas do not generate g.
    """
    if not gammas or not g.generated_by(gammas):
        raise InvalidInputError(f"Interval generators do not generate {g.name or 'the group'}")
    graph = cayley_graph(g, gammas)
    start = PauliString.identity(g.n)
    circuit = list(nx.eulerian_circuit(graph, source=start, keys=True))
    walk = CayleyWalk(
        vertices=tuple(u for u, _, _ in circuit),
        labels=tuple(k for _, _, k in circuit),
    )
    logger.debug(f"Cayley walk of length {len(walk)} over {g.size} elements")
    return walk


def emit_bounded(
    g: DDGroup,
    gammas: Sequence[PauliString],
    terms: TermSet,
    coloring: Optional[Coloring] = None,
    colors: Optional[Sequence[int]] = None,
) -> Tuple[Schedule, Verdict]:
    """Bounded-control schedule, refused unless the bounded check passes.

    Raises:
        CounterexampleError: a rotated support element survives; the
            verdict is attached.
    """
    verdict = check_bounded(g, gammas, terms)
    if not verdict.ok:
        failure = verdict.first_failure
        raise CounterexampleError(
            f"Bounded control refused for {g.name}: {failure.term} leaks "
            f"{failure.leak or failure.term}",
            term=failure.leak or failure.term,
            verdict=verdict,
        )
    walk = cayley_cycle(g, gammas)
    schedule = Schedule(
        mode=ControlMode.BOUNDED,
        colors=_default_colors(g.n, colors),
        frames=tuple(gammas[k] for k in walk.labels),
        labels=tuple(f"g{k + 1}" for k in walk.labels),
        visited=walk.vertices,
        generators=tuple(gammas),
        name=g.name,
    )
    logger.info(f"Bounded schedule {g.name}: {schedule.cycle_length} intervals")
    if coloring is not None:
        schedule = lift(schedule, coloring)
    return schedule, verdict


def sign_flip_conjugators(preserve: Sequence[PauliString]) -> Tuple[PauliString, ...]:
    """P on one side of the bipartite support graph, for P in X, Y, Z.

    Every preserved term must commute with exactly one of the three, so the
    conjugation sum multiplies it by -1.

    Raises:
        InfeasibleError: the support graph is not bipartite or some term is
            not flipped.
    """
    if not preserve:
        raise InfeasibleError("No preserved terms to flip")
    n = preserve[0].n
    graph = nx.Graph()
    for term in preserve:
        if term.weight != 2:
            raise InfeasibleError(f"Sign flip needs 2-local terms, got {term}", term=term)
        graph.add_edge(*term.support)
    if not nx.is_bipartite(graph):
        raise InfeasibleError("Support graph of the preserved terms is not bipartite")
    parts = nx.bipartite.color(graph)
    anchor = min(graph.nodes)
    side = sorted(v for v in graph.nodes if parts[v] == parts[anchor])
    conjugators = tuple(
        PauliString.on_sites(n, {site: letter for site in side}) for letter in "XYZ"
    )
    for term in preserve:
        commuting = sum(1 for c in conjugators if symplectic_inner(c, term) == 0)
        if commuting != 1:
            raise InfeasibleError(f"Term {term} is not sign-flipped", term=term)
    return conjugators


def sign_flip_cycle(
    base: DDGroup,
    conjugators: Sequence[PauliString],
    colors: Optional[Sequence[int]] = None,
) -> Schedule:
    """One bang-bang block of ``base`` per conjugator, frames shifted by it."""
    block = gray_order(base)
    frames = [c * element for c in conjugators for element in block]
    return Schedule(
        mode=ControlMode.BANG_BANG,
        colors=_default_colors(base.n, colors),
        frames=tuple(frames),
        interpulse=tuple(interpulse_ops(frames)),
        generators=base.generators,
        name=f"{base.name}-signflip",
    )


def kitaev_cycle() -> Schedule:
    """12-slot cycle: the <W1, W2> block conjugated by XXX, YYY, ZZZ on {1, 4, 5}."""
    instance = kitaev_instance()
    base = DDGroup(instance.n, instance.kernel[:2], "kitaev")
    return sign_flip_cycle(base, instance.conjugators)


NAMED_SEQUENCES: Dict[str, Tuple[str, ...]] = {
    "xy4": ("X", "Y"),
    "cpmg": ("X",),
}


def named_sequence(name: str) -> Schedule:
    if name not in NAMED_SEQUENCES:
        raise InvalidInputError(f"Unknown sequence {name!r}")
    return emit_bang_bang(DDGroup.from_texts(NAMED_SEQUENCES[name], name=name))


# File formats


def schedule_to_schema(schedule: Schedule) -> ScheduleSchema:
    return ScheduleSchema(
        name=schedule.name,
        mode=schedule.mode.value,
        colors=list(schedule.colors),
        L=schedule.cycle_length,
        frames=[f.to_text() for f in schedule.frames],
        interpulse=[p.to_text() for p in schedule.interpulse],
        labels=list(schedule.labels),
        visited=[v.to_text() for v in schedule.visited],
        generators=[g.to_text() for g in schedule.generators],
        lifted=(
            {str(q): "".join(letters) for q, letters in schedule.lifted.items()}
            if schedule.lifted is not None
            else None
        ),
    )


def parse_schedule(data: Union[dict, ScheduleSchema]) -> Schedule:
    schema = data if isinstance(data, ScheduleSchema) else ScheduleSchema.model_validate(data)
    strings = lambda texts: tuple(PauliString.from_text(t) for t in texts)  # noqa: E731
    return Schedule(
        mode=ControlMode(schema.mode),
        colors=tuple(schema.colors),
        frames=strings(schema.frames),
        interpulse=strings(schema.interpulse),
        labels=tuple(schema.labels),
        visited=strings(schema.visited),
        generators=strings(schema.generators),
        lifted=(
            {int(q): tuple(letters) for q, letters in schema.lifted.items()}
            if schema.lifted is not None
            else None
        ),
        name=schema.name,
    )


def export(schedule: Schedule, fmt: str, path: Path) -> Path:
    """Write a schedule as JSON (lossless) or CSV (frames only).

    Raises:
        InvalidInputError: unknown format, or lifted CSV of an unlifted schedule.
    """
    if fmt == "json":
        storage.write_json(path, schedule_to_schema(schedule).model_dump())
    elif fmt == "csv":
        header = [f"c{c}" for c in schedule.colors]
        rows = [list(frame.to_text()) for frame in schedule.frames]
        storage.write_csv(path, header, rows)
    elif fmt == "lifted-csv":
        if schedule.lifted is None:
            raise InvalidInputError("Schedule is not lifted")
        qubits = sorted(schedule.lifted)
        rows = [
            [schedule.lifted[q][slot] for q in qubits] for slot in range(schedule.cycle_length)
        ]
        storage.write_csv(path, [f"q{q}" for q in qubits], rows)
    else:
        raise InvalidInputError(f"Unknown schedule format {fmt!r}; use one of {SCHEDULE_FORMATS}")
    logger.info(f"Wrote {fmt} schedule to {path}")
    return path
