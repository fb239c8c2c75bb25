"""Tests for schedule emission, Cayley walks, sign-flip cycles and schedule files."""

from collections import Counter
from functools import reduce

import pytest

from twirlc import storage
from twirlc.core.code_forge import TRIANGLE_UNIVERSAL, rm_bounded
from twirlc.core.dd_compiler import DDGroup, Term, TermRole, TermSet, kitaev_instance
from twirlc.core.errors import CounterexampleError, InfeasibleError, InvalidInputError
from twirlc.core.field_pauli import PauliString
from twirlc.core.interactions import ControlMode
from twirlc.core.sequencer import (
    cayley_cycle,
    emit_bang_bang,
    emit_bounded,
    export,
    gray_order,
    interpulse_ops,
    kitaev_cycle,
    named_sequence,
    parse_schedule,
    schedule_to_schema,
    sign_flip_conjugators,
    sign_flip_cycle,
)

P = PauliString.from_text


@pytest.fixture
def triangle_group():
    return DDGroup.from_texts(TRIANGLE_UNIVERSAL, name="triangle")


@pytest.fixture
def kitaev_terms():
    kitaev = kitaev_instance()
    suppress = [
        Term(t.pauli) for t in kitaev.analog_terms().terms if t.role == TermRole.SUPPRESS
    ]
    return TermSet.build(suppress + list(kitaev.comb_terms().terms), kitaev.n)


class TestBangBang:
    def test_xy4_frames_and_pulses(self):
        schedule = named_sequence("xy4")
        assert [f.to_text() for f in schedule.frames] == ["I", "X", "Z", "Y"]
        assert [p.to_text() for p in schedule.interpulse] == ["X", "Y", "X", "Y"]

    def test_cpmg(self):
        assert [f.to_text() for f in named_sequence("cpmg").frames] == ["I", "X"]

    def test_unknown_sequence(self):
        with pytest.raises(InvalidInputError):
            named_sequence("udd")

    def test_gray_order_visits_every_element_once(self, triangle_group):
        frames = gray_order(triangle_group)
        assert len(set(frames)) == triangle_group.size
        assert set(frames) == set(triangle_group.elements())

    def test_interpulse_is_single_generator(self, triangle_group):
        generators = set(triangle_group.generators)
        assert set(interpulse_ops(gray_order(triangle_group))[:-1]) <= generators

    def test_pulses_telescope_to_identity(self, triangle_group):
        pulses = emit_bang_bang(triangle_group).interpulse
        assert reduce(lambda a, b: a * b, pulses).is_identity()

    def test_schedule_csv_shape(self, triangle_group, tmp_path):
        path = export(emit_bang_bang(triangle_group), "csv", tmp_path / "schedule.csv")
        rows = storage.read_csv(path)
        assert rows[0] == ["c1", "c2", "c3"]
        assert len(rows) == 17
        assert all(len(r) == 3 for r in rows)


class TestCayleyWalk:
    @pytest.mark.parametrize(
        "chi, variant, length",
        [(6, "universal", 160), (6, "zz", 64), (7, "zz", 64)],
    )
    def test_bounded_rm_lengths(self, chi, variant, length):
        group = DDGroup.from_code(rm_bounded(chi, variant))
        walk = cayley_cycle(group, group.generators)
        assert len(walk) == length == group.size * group.dimension

    def test_walk_uses_each_generator_size_times(self, triangle_group):
        walk = cayley_cycle(triangle_group, triangle_group.generators)
        assert set(walk.vertices) == set(triangle_group.elements())
        assert Counter(walk.labels) == {i: 16 for i in range(4)}
        assert walk.vertices[0].is_identity()

    def test_walk_needs_generating_set(self, triangle_group):
        with pytest.raises(InvalidInputError):
            cayley_cycle(triangle_group, triangle_group.generators[:2])

    def test_bounded_refusal_carries_verdict(self, kitaev_terms):
        kitaev = kitaev_instance()
        group = DDGroup(6, kitaev.kernel[:2])
        with pytest.raises(CounterexampleError) as info:
            emit_bounded(group, group.generators, kitaev_terms)
        assert info.value.verdict is not None
        assert not info.value.verdict.ok

    def test_bounded_kitaev_has_64_slices(self, kitaev_terms):
        kitaev = kitaev_instance()
        group = DDGroup(6, kitaev.kernel)
        schedule, verdict = emit_bounded(group, group.generators, kitaev_terms)
        assert verdict.ok
        assert schedule.mode == ControlMode.BOUNDED
        assert schedule.cycle_length == 64
        assert set(schedule.labels) == {"g1", "g2", "g3", "g4"}


class TestSignFlip:
    def test_kitaev_conjugators(self):
        kitaev = kitaev_instance()
        conjugators = sign_flip_conjugators(kitaev.comb_terms().preserved())
        assert conjugators == kitaev.conjugators
        assert [c.to_text() for c in conjugators] == ["XIIXXI", "YIIYYI", "ZIIZZI"]

    def test_kitaev_cycle(self):
        schedule = kitaev_cycle()
        assert schedule.cycle_length == 12
        assert schedule.mode == ControlMode.BANG_BANG

    def test_odd_cycle_is_rejected(self):
        with pytest.raises(InfeasibleError):
            sign_flip_conjugators([P("XXI"), P("IXX"), P("XIX")])

    def test_non_two_local_term(self):
        with pytest.raises(InfeasibleError):
            sign_flip_conjugators([P("XXX")])

    def test_cycle_blocks(self):
        base = DDGroup.from_texts(["ZZ"])
        schedule = sign_flip_cycle(base, [P("XI"), P("YI"), P("ZI")])
        assert [f.to_text() for f in schedule.frames] == ["XI", "YZ", "YI", "XZ", "ZI", "IZ"]


class TestScheduleFiles:
    def test_json_round_trip(self, triangle_group, tmp_path):
        from twirlc.core.device_graph import Coloring

        coloring = Coloring({1: 1, 2: 2, 3: 3, 4: 1})
        schedule = emit_bang_bang(triangle_group, coloring)
        path = export(schedule, "json", tmp_path / "schedule.json")
        loaded = parse_schedule(storage.read_json(path))
        assert schedule_to_schema(loaded) == schedule_to_schema(schedule)

    def test_lifted_csv(self, triangle_group, tmp_path):
        from twirlc.core.device_graph import Coloring

        schedule = emit_bang_bang(triangle_group, Coloring({1: 1, 2: 2, 3: 3, 4: 1}))
        rows = storage.read_csv(export(schedule, "lifted-csv", tmp_path / "lifted.csv"))
        assert rows[0] == ["q1", "q2", "q3", "q4"]
        assert all(r[0] == r[3] for r in rows[1:])

    def test_unlifted_schedule_has_no_lifted_csv(self, tmp_path):
        with pytest.raises(InvalidInputError):
            export(named_sequence("xy4"), "lifted-csv", tmp_path / "x.csv")

    def test_unknown_format(self, tmp_path):
        with pytest.raises(InvalidInputError):
            export(named_sequence("xy4"), "yaml", tmp_path / "x.yaml")
