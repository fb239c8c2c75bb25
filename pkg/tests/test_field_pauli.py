"""Tests for F4 arithmetic and phase-free Pauli strings."""

from itertools import product

import numpy as np
import pytest

from twirlc.core.errors import InvalidInputError
from twirlc.core.field_pauli import (
    F4Element,
    PauliString,
    f4_add,
    f4_mul,
    f4_pauli_map,
    is_valid_pauli_text,
    pauli_f4_map,
    parse_f4_vector,
    pauli_mul,
    symplectic_form,
    symplectic_inner,
    trace_hermitian_inner,
)

ZERO, ONE, W, W1 = F4Element.ZERO, F4Element.ONE, F4Element.W, F4Element.W_PLUS_ONE
P = PauliString.from_text


def all_strings(n):
    return [P("".join(letters)) for letters in product("IXYZ", repeat=n)]


class TestF4Arithmetic:
    def test_addition_table(self):
        assert f4_add(W, W1) == ONE
        assert f4_add(ONE, W) == W1
        assert f4_add(ONE, W1) == W

    def test_additive_identity_and_inverse(self):
        for a in F4Element:
            assert f4_add(ZERO, a) == a
            assert f4_add(a, a) == ZERO

    def test_multiplication_table(self):
        assert f4_mul(W, W) == W1
        assert f4_mul(W1, W) == ONE
        assert f4_mul(W1, W1) == W
        for a in F4Element:
            assert f4_mul(ZERO, a) == ZERO
            assert f4_mul(ONE, a) == a

    def test_literals_round_trip(self):
        for a in F4Element:
            assert F4Element.parse(a.literal) == a
        assert F4Element.parse("w+1") == W1

    def test_unknown_literal(self):
        with pytest.raises(InvalidInputError):
            F4Element.parse("2")

    def test_vector_literals(self):
        vector = parse_f4_vector(["0", "1", "w", "1+w"])
        assert vector == (ZERO, ONE, W, W1)
        assert PauliString.from_f4(vector).to_text() == "IXZY"


class TestPauliF4Map:
    def test_mapping(self):
        assert pauli_f4_map("I") == ZERO
        assert pauli_f4_map("X") == ONE
        assert pauli_f4_map("Z") == W
        assert pauli_f4_map("Y") == W1

    def test_inverse(self):
        for letter in "IXYZ":
            assert f4_pauli_map(pauli_f4_map(letter)) == letter

    def test_string_f4_view(self):
        p = P("XIZY")
        assert [int(v) for v in p.to_f4()] == [1, 0, 2, 3]
        assert PauliString.from_f4(p.to_f4()) == p


class TestPauliString:
    def test_text_round_trip(self):
        assert P("XIZY").to_text() == "XIZY"
        assert str(P("IIII")) == "IIII"

    def test_site_one_is_lowest_bit(self):
        p = P("XZ")
        assert p.x == 0b01
        assert p.z == 0b10

    def test_weight_and_support(self):
        p = P("XIZY")
        assert p.weight == 3
        assert p.support == (0, 2, 3)

    def test_invalid_text(self):
        assert not is_valid_pauli_text("XQ")
        assert is_valid_pauli_text("XYZI")
        with pytest.raises(InvalidInputError):
            P("XQ")

    def test_restrict_and_mask(self):
        p = P("XYZI")
        assert p.restrict([2, 0]).to_text() == "ZX"
        assert p.mask([1]).to_text() == "IYII"

    def test_symplectic_round_trip(self):
        p = P("XYZI")
        assert PauliString.from_symplectic(p.to_symplectic()) == p


class TestPauliMul:
    def test_single_site(self):
        assert pauli_mul(P("X"), P("Y")) == P("Z")

    def test_identity(self):
        assert pauli_mul(PauliString.identity(3), P("XYZ")) == P("XYZ")

    def test_three_sites(self):
        assert P("XYZ") * P("YZX") == P("ZXY")

    def test_group_laws(self):
        strings = all_strings(2)
        for a in strings:
            assert a * a == PauliString.identity(2)
            for b in strings:
                assert a * b == b * a

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            pauli_mul(P("X"), P("XX"))


class TestSymplecticInner:
    def test_examples(self):
        assert symplectic_inner(P("X"), P("Z")) == 1
        assert symplectic_inner(P("XYZ"), P("ZZI")) == 0
        for p in all_strings(2):
            assert symplectic_inner(p, p) == 0

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            symplectic_inner(P("X"), P("XX"))

    def test_matches_form_matrix(self):
        omega = symplectic_form(2)
        for p in all_strings(2):
            for q in all_strings(2):
                value = p.to_symplectic() @ omega @ q.to_symplectic()
                assert int(value) == symplectic_inner(p, q)

    def test_form_is_involution(self):
        omega = symplectic_form(3)
        assert np.array_equal(omega @ omega, type(omega).Identity(6))

    def test_agrees_with_dense_matrices(self):
        from twirlc.core.oracle_sim import pauli_matrix

        for p in all_strings(2):
            for q in all_strings(2):
                mp, mq = pauli_matrix(p), pauli_matrix(q)
                anticommute = np.allclose(mp @ mq, -mq @ mp)
                assert anticommute == bool(symplectic_inner(p, q))


class TestTraceHermitianInner:
    def test_one_and_w(self):
        assert trace_hermitian_inner([1], [2]) == 1

    def test_self_product_vanishes(self):
        for values in product(range(4), repeat=2):
            assert trace_hermitian_inner(values, values) == 0

    def test_agrees_with_symplectic_inner(self):
        for p in all_strings(3):
            for q in all_strings(3):
                assert trace_hermitian_inner(p.to_f4(), q.to_f4()) == symplectic_inner(p, q)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            trace_hermitian_inner([1], [1, 2])
