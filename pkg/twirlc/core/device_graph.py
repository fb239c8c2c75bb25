"""
Device Interaction Graph Module.

Interaction hypergraphs with per-hyperedge Pauli alphabets, vertex coloring,
the expanded graph, the colored quotient graph and lifting of color-level
schedules back onto physical qubits.
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from twirlc.core.errors import InvalidInputError
from twirlc.core.field_pauli import PauliString
from twirlc.core.interactions import (
    InteractionModel,
    LetterTuple,
    default_onsite,
    full_weight_tuples,
    model_tuples,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperedge:
    """Sorted site tuple with the letter tuples allowed on it."""

    sites: Tuple[int, ...]
    tuples: FrozenSet[LetterTuple]
    model: InteractionModel = InteractionModel.CUSTOM

    @classmethod
    def build(
        cls,
        sites: Iterable[int],
        model: InteractionModel = InteractionModel.ALL,
        alphabet: Optional[Sequence[Sequence[str]]] = None,
    ) -> "Hyperedge":
        raw = list(sites)
        if len(set(raw)) != len(raw) or len(raw) < 2:
            raise InvalidInputError(f"Hyperedge needs >= 2 distinct sites: {raw}")
        order = sorted(range(len(raw)), key=lambda i: raw[i])
        if alphabet is not None:
            alphabet = [alphabet[i] for i in order]
        return cls(
            sites=tuple(raw[i] for i in order),
            tuples=model_tuples(model, len(raw), alphabet),
            model=model,
        )


@dataclass(frozen=True)
class Coloring:
    """Vertex id to color id in 1..chi."""

    assignment: Mapping[int, int] = field(hash=False)

    @property
    def colors(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.assignment.values())))

    @property
    def num_colors(self) -> int:
        return len(self.colors)

    def classes(self) -> Dict[int, List[int]]:
        result: Dict[int, List[int]] = {c: [] for c in self.colors}
        for vertex in sorted(self.assignment):
            result[self.assignment[vertex]].append(vertex)
        return result

    def __getitem__(self, vertex: int) -> int:
        return self.assignment[vertex]


@dataclass(frozen=True)
class DeviceGraph:
    """Interaction hypergraph of a device."""

    vertices: Tuple[int, ...]
    hyperedges: Tuple[Hyperedge, ...]
    onsite: Mapping[int, FrozenSet[str]] = field(default_factory=dict, hash=False)
    coloring: Optional[Coloring] = None
    name: str = "device"

    @classmethod
    def build(
        cls,
        vertices: Iterable[int],
        hyperedges: Iterable[Hyperedge],
        onsite: Optional[Mapping[int, Iterable[str]]] = None,
        coloring: Optional[Mapping[int, int]] = None,
        name: str = "device",
    ) -> "DeviceGraph":
        """Deduplicate and sort hyperedges; unlisted vertices get X, Y, Z onsite."""
        verts = tuple(sorted(set(vertices)))
        known = set(verts)
        merged: Dict[Tuple[int, ...], Hyperedge] = {}
        for edge in hyperedges:
            missing = [s for s in edge.sites if s not in known]
            if missing:
                raise InvalidInputError(f"Hyperedge {edge.sites} uses unknown vertices {missing}")
            if edge.sites in merged:
                old = merged[edge.sites]
                model = old.model if old.model == edge.model else InteractionModel.CUSTOM
                edge = Hyperedge(edge.sites, old.tuples | edge.tuples, model)
            merged[edge.sites] = edge
        given = dict(onsite or {})
        alphabets = {
            v: frozenset(given[v]) if v in given else default_onsite() for v in verts
        }
        return cls(
            vertices=verts,
            hyperedges=tuple(merged[key] for key in sorted(merged)),
            onsite=alphabets,
            coloring=Coloring(dict(coloring)) if coloring else None,
            name=name,
        )

    @property
    def locality(self) -> int:
        return max((len(e.sites) for e in self.hyperedges), default=1)

    def with_model(self, model: InteractionModel) -> "DeviceGraph":
        """Same hypergraph with every hyperedge re-assigned to one model."""
        edges = [Hyperedge.build(e.sites, model) for e in self.hyperedges]
        rebuilt = DeviceGraph.build(
            self.vertices, [e for e in edges if e.tuples], self.onsite, name=self.name
        )
        return rebuilt.replace_coloring(self.coloring)

    def replace_coloring(self, coloring: Optional[Coloring]) -> "DeviceGraph":
        return dataclasses.replace(self, coloring=coloring)


@dataclass(frozen=True)
class QuotientGraph:
    """Colors as super-vertices; color tuples carry merged letter tuples."""

    colors: Tuple[int, ...]
    hyperedges: Mapping[Tuple[int, ...], FrozenSet[LetterTuple]] = field(hash=False)
    onsite: Mapping[int, FrozenSet[str]] = field(hash=False)

    @property
    def chi(self) -> int:
        return len(self.colors)

    def column(self, color: int) -> int:
        return self.colors.index(color)

    def term(self, colors: Sequence[int], letters: Sequence[str]) -> PauliString:
        return PauliString.on_sites(
            self.chi, {self.column(c): letter for c, letter in zip(colors, letters)}
        )

    def same_as(self, other: "QuotientGraph") -> bool:
        return (
            self.colors == other.colors
            and dict(self.hyperedges) == dict(other.hyperedges)
            and dict(self.onsite) == dict(other.onsite)
        )


def two_section(g: DeviceGraph) -> nx.Graph:
    """Simple graph with an edge for every pair sharing a hyperedge."""
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    for edge in g.hyperedges:
        graph.add_edges_from(combinations(edge.sites, 2))
    return graph


def validate_coloring(g: DeviceGraph, c: Coloring) -> bool:
    """True iff every vertex is colored and every hyperedge is rainbow."""
    if any(v not in c.assignment for v in g.vertices):
        return False
    for edge in g.hyperedges:
        colors = [c.assignment[s] for s in edge.sites]
        if len(set(colors)) != len(colors):
            return False
    return True


def color(g: DeviceGraph, seed_order: Optional[Sequence[int]] = None) -> Coloring:
    """Color the device, preferring a coloring supplied with the device.

    DSATUR runs on the two-section with nodes inserted in ``seed_order`` (or
    sorted order), so ties resolve toward the earliest vertex.

    Raises:
        InvalidInputError: supplied coloring is invalid, or seed_order is not
            a permutation of the vertices.
    """
    if g.coloring is not None and seed_order is None:
        if not validate_coloring(g, g.coloring):
            raise InvalidInputError(f"Supplied coloring of {g.name} is not valid")
        logger.info(f"Using supplied coloring with {g.coloring.num_colors} colors")
        return g.coloring

    order = list(seed_order) if seed_order is not None else list(g.vertices)
    if sorted(order) != list(g.vertices):
        raise InvalidInputError("seed_order must list every vertex exactly once")
    section = two_section(g)
    ordered = nx.Graph()
    ordered.add_nodes_from(order)
    ordered.add_edges_from(section.edges)
    raw = nx.coloring.greedy_color(ordered, strategy="saturation_largest_first")
    coloring = Coloring({v: raw[v] + 1 for v in order})
    logger.info(f"DSATUR colored {len(order)} vertices with {coloring.num_colors} colors")
    return coloring


def _require_valid(g: DeviceGraph, c: Coloring) -> None:
    if not validate_coloring(g, c):
        raise InvalidInputError(f"Coloring is not valid for {g.name}")


def _color_tuples(g: DeviceGraph, c: Coloring) -> Dict[Tuple[int, ...], set]:
    merged: Dict[Tuple[int, ...], set] = {}
    for edge in g.hyperedges:
        colors = [c[s] for s in edge.sites]
        order = sorted(range(len(colors)), key=lambda i: colors[i])
        key = tuple(colors[i] for i in order)
        letters = {tuple(t[i] for i in order) for t in edge.tuples}
        merged.setdefault(key, set()).update(letters)
    return merged


def quotient(g: DeviceGraph, c: Coloring) -> QuotientGraph:
    """Collapse every color class to one super-vertex."""
    _require_valid(g, c)
    onsite: Dict[int, set] = {color_id: set() for color_id in c.colors}
    for v in g.vertices:
        onsite[c[v]].update(g.onsite.get(v, ()))
    return QuotientGraph(
        colors=c.colors,
        hyperedges={k: frozenset(v) for k, v in sorted(_color_tuples(g, c).items())},
        onsite={k: frozenset(v) for k, v in onsite.items()},
    )


def expand(g: DeviceGraph, c: Coloring) -> DeviceGraph:
    """Add every rainbow vertex tuple whose color tuple already occurs."""
    _require_valid(g, c)
    classes = c.classes()
    edges = list(g.hyperedges)
    for key, letters in _color_tuples(g, c).items():
        for vertices in product(*[classes[color_id] for color_id in key]):
            order = sorted(range(len(vertices)), key=lambda i: vertices[i])
            edges.append(
                Hyperedge(
                    sites=tuple(vertices[i] for i in order),
                    tuples=frozenset(tuple(t[i] for i in order) for t in letters),
                )
            )
    expanded = DeviceGraph.build(g.vertices, edges, g.onsite, None, f"{g.name}-expanded")
    return expanded.replace_coloring(g.coloring)


def path_triples(g: DeviceGraph) -> List[Tuple[int, int, int]]:
    """Vertex triples forming a length-2 path in the two-section."""
    section = two_section(g)
    triples = set()
    for middle in section.nodes:
        for a, b in combinations(sorted(section.neighbors(middle)), 2):
            triples.add(tuple(sorted((a, middle, b))))
    return sorted(triples)


def model_terms(
    q: QuotientGraph,
    k: int,
    model: Optional[InteractionModel] = None,
    complete: bool = False,
    onsite: bool = True,
) -> List[PauliString]:
    """Every term of weight <= k the quotient allows, deduplicated and sorted.

    Args:
        q: Quotient graph.
        k: Locality bound.
        model: When given, replaces the quotient's own letter tuples on
            every color subset of a hyperedge.
        complete: Treat every color subset of size <= k as a hyperedge.
        onsite: Include the 1-local onsite terms.
    """
    terms = set()
    if onsite:
        for color_id, letters in q.onsite.items():
            for letter in letters:
                terms.add(q.term([color_id], [letter]))

    supports = set()
    if complete:
        for size in range(2, k + 1):
            supports.update(combinations(q.colors, size))
    for key, letters in q.hyperedges.items():
        if model is None and not complete:
            for t in letters:
                term = q.term(key, t)
                if 0 < term.weight <= k:
                    terms.add(term)
            continue
        for size in range(2, min(k, len(key)) + 1):
            supports.update(combinations(key, size))

    if model is not None or complete:
        chosen = model if model is not None else InteractionModel.ALL
        for support in supports:
            for t in full_weight_tuples(chosen, len(support)):
                terms.add(q.term(support, t))
    return sorted(terms, key=lambda p: (p.weight, p.to_text()))


def lift(schedule, c: Coloring):
    """Broadcast a color-level schedule onto every physical qubit.

    Each qubit receives the letter column of its color in every slot.

    Raises:
        InvalidInputError: a qubit's color has no column in the schedule.
    """
    columns = {color_id: j for j, color_id in enumerate(schedule.colors)}
    missing = sorted({c[v] for v in c.assignment if c[v] not in columns})
    if missing:
        raise InvalidInputError(f"Schedule has no pulses for colors {missing}")
    slots = schedule.slot_strings()
    lifted = {
        v: tuple(slot.letter(columns[c[v]]) for slot in slots)
        for v in sorted(c.assignment)
    }
    return dataclasses.replace(schedule, lifted=lifted)
