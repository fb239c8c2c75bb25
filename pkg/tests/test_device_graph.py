"""Tests for device hypergraphs, coloring, quotient graphs and lifting."""

import pytest

from twirlc import storage
from twirlc.core.device_graph import (
    Coloring,
    DeviceGraph,
    Hyperedge,
    color,
    expand,
    lift,
    model_terms,
    path_triples,
    quotient,
    two_section,
    validate_coloring,
)
from twirlc.core.errors import InvalidInputError
from twirlc.core.interactions import InteractionModel, model_tuples
from twirlc.core.sequencer import emit_bang_bang, named_sequence
from twirlc.core.dd_compiler import DDGroup


@pytest.fixture
def triangle():
    return DeviceGraph.build([1, 2, 3], [Hyperedge.build([1, 2, 3])])


@pytest.fixture
def bilinear():
    return storage.load_device("bilinear7")


class TestTwoSection:
    def test_triangle_hyperedge(self, triangle):
        assert sorted(two_section(triangle).edges) == [(1, 2), (1, 3), (2, 3)]

    def test_two_local_graph_unchanged(self, bilinear):
        edges = {tuple(sorted(e)) for e in two_section(bilinear).edges}
        assert edges == {e.sites for e in bilinear.hyperedges}

    def test_empty(self):
        assert two_section(DeviceGraph.build([], [])).number_of_edges() == 0

    def test_path_triples_of_chain(self):
        chain = DeviceGraph.build([1, 2, 3], [Hyperedge.build([1, 2]), Hyperedge.build([2, 3])])
        assert path_triples(chain) == [(1, 2, 3)]


class TestColoring:
    def test_bilinear_needs_three_colors(self, bilinear):
        coloring = color(bilinear)
        assert coloring.num_colors == 3
        assert validate_coloring(bilinear, coloring)

    def test_isolated_vertex(self):
        assert color(DeviceGraph.build([5], [])).num_colors == 1

    def test_empty_device(self):
        assert color(DeviceGraph.build([], [])).num_colors == 0

    def test_bundled_lattice_colorings(self):
        for name in ("square", "heavy_hex"):
            device = storage.load_device(name)
            coloring = color(device)
            assert coloring is device.coloring
            assert coloring.num_colors == 6

    def test_ring_coloring_is_valid(self):
        ring = storage.load_device("ring7")
        assert validate_coloring(ring, ring.coloring)

    def test_constant_coloring_is_invalid(self, bilinear):
        assert not validate_coloring(bilinear, Coloring({v: 1 for v in bilinear.vertices}))

    def test_seed_order_must_be_permutation(self, bilinear):
        with pytest.raises(InvalidInputError):
            color(bilinear, [1, 2, 3])

    def test_seed_order_overrides_supplied_coloring(self):
        ring = storage.load_device("ring7")
        coloring = color(ring, list(reversed(ring.vertices)))
        assert validate_coloring(ring, coloring)
        assert coloring.num_colors == 3

    def test_greedy_bound(self, bilinear):
        degree = max(d for _, d in two_section(bilinear).degree)
        assert color(bilinear).num_colors <= degree + 1


class TestQuotient:
    def test_bilinear_collapses_to_triangle(self, bilinear):
        q = quotient(bilinear, color(bilinear))
        assert q.chi == 3
        assert sorted(q.hyperedges) == [(1, 2), (1, 3), (2, 3)]

    def test_ring_and_bilinear_share_quotient(self, bilinear):
        ring = storage.load_device("ring7")
        assert quotient(ring, ring.coloring).same_as(quotient(bilinear, color(bilinear)))

    def test_heavy_hex_and_square_share_quotient(self):
        heavy_hex = storage.load_device("heavy_hex")
        square = storage.load_device("square")
        assert len(heavy_hex.vertices) == 62
        assert quotient(heavy_hex, heavy_hex.coloring).same_as(quotient(square, square.coloring))

    def test_trilinear_is_square_with_diagonals(self):
        device = storage.load_device("trilinear")
        q = quotient(device, device.coloring)
        pairs = [k for k in q.hyperedges if len(k) == 2]
        triples = [k for k in q.hyperedges if len(k) == 3]
        assert q.chi == 4
        assert len(pairs) == 6
        assert len(triples) == 4

    def test_invalid_coloring_rejected(self, triangle):
        with pytest.raises(InvalidInputError):
            quotient(triangle, Coloring({1: 1, 2: 1, 3: 2}))

    def test_expand_is_idempotent_for_quotient(self, bilinear):
        c = color(bilinear)
        expanded = expand(bilinear, c)
        assert {e.sites for e in bilinear.hyperedges} <= {e.sites for e in expanded.hyperedges}
        assert validate_coloring(expanded, c)
        assert quotient(expanded, c).same_as(quotient(bilinear, c))

    def test_expand_fixed_point(self, triangle):
        c = color(triangle)
        assert {e.sites for e in expand(triangle, c).hyperedges} == {(1, 2, 3)}


class TestModelTerms:
    def test_triangle_all_model(self, bilinear):
        q = quotient(bilinear, color(bilinear))
        terms = model_terms(q, 2)
        assert len(terms) == 9 + 3 * 9
        assert all(t.weight <= 2 for t in terms)

    def test_z_override(self, bilinear):
        q = quotient(bilinear, color(bilinear))
        two_body = [t for t in model_terms(q, 2, InteractionModel.Z) if t.weight == 2]
        assert sorted(t.to_text() for t in two_body) == ["IZZ", "ZIZ", "ZZI"]

    def test_without_onsite(self, bilinear):
        q = quotient(bilinear, color(bilinear))
        terms = model_terms(q, 2, InteractionModel.HEISENBERG, onsite=False)
        assert len(terms) == 9
        assert all(t.weight == 2 for t in terms)

    def test_custom_model_needs_alphabet(self):
        with pytest.raises(InvalidInputError):
            model_tuples(InteractionModel.CUSTOM, 2)

    def test_custom_alphabet_length_must_match_arity(self):
        with pytest.raises(InvalidInputError):
            model_tuples(InteractionModel.CUSTOM, 2, ["XY"])


class TestLift:
    def test_broadcast_to_same_colored_qubits(self):
        lifted = lift(named_sequence("xy4"), Coloring({10: 1, 11: 1}))
        assert lifted.lifted == {10: ("I", "X", "Z", "Y"), 11: ("I", "X", "Z", "Y")}

    def test_lift_replicates_columns_per_color(self, bilinear):
        c = color(bilinear)
        group = DDGroup.from_texts(["XIX", "XYZ", "YIY", "YZX"])
        schedule = emit_bang_bang(group, c)
        assert len(schedule.lifted) == 7
        for v in bilinear.vertices:
            column = c[v] - 1
            assert schedule.lifted[v] == tuple(f.letter(column) for f in schedule.frames)

    def test_missing_color(self):
        with pytest.raises(InvalidInputError):
            lift(named_sequence("xy4"), Coloring({1: 2}))
