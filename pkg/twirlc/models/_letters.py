"""Shared validators for Pauli letter strings."""

from typing import List

PAULI_LETTERS = frozenset("IXYZ")


def check_pauli_text(value: str) -> str:
    if not value or set(value) - PAULI_LETTERS:
        raise ValueError(f"not a Pauli letter string: {value!r}")
    return value


def check_equal_lengths(values: List[str], n: int, what: str) -> None:
    for value in values:
        if len(value) != n:
            raise ValueError(f"{what} {value!r} does not have length {n}")
