"""Tests for additive codes, orthogonal arrays and the named constructions."""

from itertools import combinations

import numpy as np
import pytest

from twirlc.config import settings
from twirlc.core import code_forge
from twirlc.core.code_forge import (
    AdditiveCode,
    additive_pg_code,
    cap_set,
    ceil_log2,
    ceil_log4,
    chirality_expand,
    desarguesian_spread,
    dual,
    dual_distance,
    heisenberg_expand,
    hexacode,
    is_cap,
    linear_pg_code,
    linear_pg_code_for,
    lines_disjoint,
    lines_to_code,
    min_distance,
    parity_dimension,
    partial_spread_search,
    pg22_sudoku_search,
    pg_points,
    rm_bounded,
    rm_code,
    rm_punctured,
    rm_universal,
    rm_universal_for,
    spread_pg32,
    tailored_terms,
    to_orthogonal_array,
    undetected_terms,
    universal3_code,
    verify_oa_strength,
    verify_tailored,
)
from twirlc.core.errors import CodeTooLargeError, InfeasibleError, InvalidInputError
from twirlc.core.field_pauli import PauliString

P = PauliString.from_text


def z_terms(n, max_weight):
    return [
        PauliString.on_sites(n, {s: "Z" for s in sites})
        for w in range(1, max_weight + 1)
        for sites in combinations(range(n), w)
    ]


def one_local(n):
    return [PauliString.single(n, j, letter) for j in range(n) for letter in "XYZ"]


class TestHelpers:
    def test_ceil_logs(self):
        assert [ceil_log2(v) for v in (1, 2, 7, 8, 9)] == [0, 1, 3, 3, 4]
        assert [ceil_log4(v) for v in (1, 4, 5, 16, 17)] == [0, 1, 2, 2, 3]

    def test_parity_dimension(self):
        assert parity_dimension(16, 20) == 4
        assert parity_dimension(19, 23) == 5


class TestAdditiveCode:
    def test_dependent_generators_rejected(self):
        with pytest.raises(InvalidInputError):
            AdditiveCode.from_texts(["XZ", "XZ"])

    def test_binary_code_must_be_x_type(self):
        with pytest.raises(InvalidInputError):
            AdditiveCode.from_texts(["XZ"], alphabet="F2")

    def test_span_drops_dependent_strings(self):
        code = AdditiveCode.span(2, [P("XI"), P("IX"), P("XX"), P("II")])
        assert code.texts() == ["XI", "IX"]
        assert code.size == 4

    def test_codewords_limit(self, monkeypatch):
        monkeypatch.setattr(settings, "MAX_CODE_LOG2", 2)
        with pytest.raises(CodeTooLargeError):
            list(rm_code(3).codewords())

    def test_contains_and_restrict(self):
        code = AdditiveCode.from_texts(["XXZ", "ZYI"])
        assert code.contains(P("YZZ"))
        assert not code.contains(P("XII"))
        assert code.restrict([0, 1]).texts() == ["XX", "ZY"]

    def test_f4_table(self):
        code = AdditiveCode.from_texts(["XZY", "IXX"])
        assert code.f4_table() == [[1, 2, 3], [0, 1, 1]]
        assert AdditiveCode.from_f4_rows(code.f4_table()).same_span(code)


class TestDuality:
    def test_dual_size(self):
        for code in (hexacode(), lines_to_code(spread_pg32()), AdditiveCode.from_texts(["XYZ"])):
            assert code.dimension + dual(code).dimension == 2 * code.n

    def test_dual_commutes(self):
        code = lines_to_code(spread_pg32())
        for d in dual(code).generators:
            assert all(d.commutes_with(g) for g in code.generators)

    def test_binary_rm_is_self_dual(self):
        code = rm_code(3)
        assert dual(code).same_span(code)
        assert min_distance(code) == 4
        assert dual_distance(code) == 4

    def test_zero_code_distance(self):
        assert min_distance(AdditiveCode(3, ())) == 4

    def test_hexacode_distances(self):
        code = hexacode()
        assert code.dimension == 6
        assert min_distance(code) == 4
        assert dual_distance(code) == 4

    def test_dual_distance_matches_dual_weights(self):
        code = AdditiveCode.from_texts(["XXI", "ZZZ"])
        lightest = min(w.weight for w in dual(code).codewords() if not w.is_identity())
        assert dual_distance(code) == lightest


class TestOrthogonalArrays:
    def test_strength_is_dual_distance_minus_one(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(1, 5))
            strings = [
                PauliString.from_f4(rng.integers(0, 4, size=n).tolist())
                for _ in range(int(rng.integers(1, n + 2)))
            ]
            code = AdditiveCode.span(n, strings)
            d_perp = dual_distance(code)
            oa = to_orthogonal_array(code)
            assert oa.strength == min(d_perp - 1, n)
            if d_perp <= n:
                assert not verify_oa_strength(oa, d_perp)

    def test_spread_code_is_strength_two(self):
        oa = to_orthogonal_array(lines_to_code(spread_pg32()))
        assert (oa.runs, oa.factors, len(oa.alphabet), oa.strength) == (16, 5, 4, 2)

    def test_binary_array_alphabet(self):
        oa = to_orthogonal_array(rm_code(2))
        assert oa.alphabet == ("I", "X")
        assert oa.strength == 3


class TestReedMuller:
    def test_universal_substitution(self):
        assert rm_universal(3).texts() == ["XXXXXXXX", "XXXXZZZZ", "XXIIXXII", "YZYZYZYZ"]

    def test_punctured_substitution(self):
        assert rm_punctured(3).texts() == ["XXXXZZZ", "XXIIXXI", "YZYZYZY"]

    def test_universal_on_six_colors(self):
        code = rm_universal_for(6)
        assert code.size == 16
        assert not undetected_terms(code.generators, one_local(6) + z_terms(6, 3))

    def test_punctured_on_six_colors(self):
        code = code_forge.rm_punctured_for(6)
        assert code.size == 8
        assert not undetected_terms(code.generators, one_local(6) + z_terms(6, 2))

    def test_punctured_misses_a_zzz_term(self):
        missed = undetected_terms(rm_punctured(3).generators, z_terms(7, 3))
        assert P("ZZIIIIZ") in missed

    def test_chi_out_of_range(self):
        with pytest.raises(InvalidInputError):
            rm_punctured(3, 8)

    def test_bounded_variants(self):
        assert rm_bounded(6, "universal").size == 32
        assert rm_bounded(6, "zz").size == 16
        assert rm_bounded(7, "zz").size == 16
        assert rm_bounded(6).generators[-1] == P("ZZZZZZ")
        with pytest.raises(InvalidInputError):
            rm_bounded(6, "xy")


class TestProjectiveGeometry:
    def test_point_counts(self):
        assert len(pg_points(1, 4)) == 5
        assert len(pg_points(2, 4)) == 21
        assert len(pg_points(2, 2)) == 7

    def test_linear_code_five_columns(self):
        code = linear_pg_code_for(5)
        assert code.n == 5
        assert code.size == 16
        assert dual_distance(code) >= 3

    def test_repeated_point_rejected(self):
        point = pg_points(1, 4)[0]
        with pytest.raises(InvalidInputError):
            linear_pg_code(1, [point, point])

    def test_caps(self):
        assert is_cap(cap_set(2))
        assert len(cap_set(2)) == 6
        assert is_cap(cap_set(3))
        assert not is_cap(pg_points(1, 4)[:3])

    def test_universal3_strength(self):
        code = universal3_code(6)
        assert code.size == 64
        assert dual_distance(code) >= 4


class TestSpreads:
    def test_pg32_spread_covers_everything(self):
        lines = spread_pg32()
        assert len(lines) == 5
        assert lines_disjoint(lines)

    def test_desarguesian(self):
        assert len(desarguesian_spread(4)) == 5
        lines = desarguesian_spread(6)
        assert len(lines) == 21
        assert lines_disjoint(lines)

    def test_odd_dimension_has_no_full_spread(self):
        with pytest.raises(InvalidInputError):
            desarguesian_spread(5)

    def test_partial_spread(self):
        lines = partial_spread_search(5, 6)
        assert len(lines) == 6
        assert lines_disjoint(lines)

    def test_fano_plane_has_no_two_disjoint_lines(self):
        with pytest.raises(InfeasibleError):
            partial_spread_search(3, 2)

    def test_additive_codes(self):
        assert additive_pg_code(5).size == 16
        code = additive_pg_code(6)
        assert code.size == 32
        assert dual_distance(code) >= 3


class TestTailoredExpansions:
    def test_heisenberg_expansion(self):
        code = heisenberg_expand(lines_to_code(spread_pg32()))
        assert (code.n, code.dimension) == (15, 4)
        assert len([t for t in tailored_terms(15) if t.weight == 2]) == 3 * 105
        verify_tailored(code)

    def test_chirality_codes(self):
        codes = chirality_expand()
        assert [p.to_text() for p in codes.intermediate] == [
            "XXZY", "XZXZ", "ZXXZ", "ZZYX", "ZYZY", "YZZY",
        ]
        assert codes.four.texts() == ["XXZY", "XZXZ", "ZZYX", "ZYZY"]
        assert codes.five.texts() == ["ZXXZY", "YZXXZ", "YZZYX", "XYZZY"]
        assert codes.four.size == codes.five.size == 16

    def test_universal_check_misses_chirality(self):
        missed = undetected_terms(
            AdditiveCode.from_texts(["XIX", "XYZ"]).generators, tailored_terms(3, chirality=True)
        )
        assert missed

    def test_pg22_greedy(self):
        solution = pg22_sudoku_search()
        assert solution.cells == ((1, 2, 4), (2, 3, 6), (3, 4, 7), (4, 6, 5), (5, 7, 2))
        assert solution.code.texts() == ["XIZXY", "ZXZYZ", "IZXZY"]
        verify_tailored(solution.code)
        verify_tailored(solution.code.restrict([0, 1, 2, 3]))

    def test_pg22_exhaustive(self):
        solution = pg22_sudoku_search(exhaustive=True)
        assert len(solution.cells) == 7
        assert len({c[1] for c in solution.cells}) == 7
        assert len({c[2] for c in solution.cells}) == 7
