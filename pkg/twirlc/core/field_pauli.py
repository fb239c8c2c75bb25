"""
Pauli and F4 Arithmetic Module.

Phase-free Pauli strings in packed binary symplectic form, the F4 view of
their sites, and the inner products that decide commutation. Site i of the
text form "XIZY..." (leftmost is site 1) is bit i-1 of the x and z words.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import galois
import numpy as np

from twirlc.core.errors import InvalidInputError

GF2 = galois.GF(2)
GF4 = galois.GF(4)

# galois encodes F4 = {0, 1, a, a+1} as 0..3 with a^2 = a + 1, so the
# integer value a + 2b is the element a*1 + b*w.
_F4_ELEMENTS = GF4(np.arange(4))
_MUL_TABLE = (_F4_ELEMENTS[:, None] * _F4_ELEMENTS[None, :]).view(np.ndarray)

_LETTER_TO_BITS: Dict[str, Tuple[int, int]] = {
    "I": (0, 0),
    "X": (1, 0),
    "Z": (0, 1),
    "Y": (1, 1),
}
_BITS_TO_LETTER = {bits: letter for letter, bits in _LETTER_TO_BITS.items()}


class F4Element(IntEnum):
    """Element a*1 + b*w of F4, stored as the integer a + 2b."""

    ZERO = 0
    ONE = 1
    W = 2
    W_PLUS_ONE = 3

    @property
    def pair(self) -> Tuple[int, int]:
        return int(self) & 1, int(self) >> 1

    @property
    def literal(self) -> str:
        return _F4_LITERALS[self]

    @classmethod
    def parse(cls, literal: str) -> "F4Element":
        key = literal.replace(" ", "").lower().replace("ω", "w")
        if key not in _LITERAL_TO_F4:
            raise InvalidInputError(f"Unknown F4 literal: {literal!r}")
        return _LITERAL_TO_F4[key]


_F4_LITERALS = {
    F4Element.ZERO: "0",
    F4Element.ONE: "1",
    F4Element.W: "w",
    F4Element.W_PLUS_ONE: "1+w",
}
_LITERAL_TO_F4 = {literal: element for element, literal in _F4_LITERALS.items()}
_LITERAL_TO_F4["w+1"] = F4Element.W_PLUS_ONE


def f4_add(a: F4Element, b: F4Element) -> F4Element:
    return F4Element(int(a) ^ int(b))


def f4_mul(a: F4Element, b: F4Element) -> F4Element:
    return F4Element(int(_MUL_TABLE[int(a), int(b)]))


def pauli_f4_map(letter: str) -> F4Element:
    """Map I, X, Z, Y to 0, 1, w, 1+w."""
    if letter not in _LETTER_TO_BITS:
        raise InvalidInputError(f"Unknown Pauli letter: {letter!r}")
    x, z = _LETTER_TO_BITS[letter]
    return F4Element(x + 2 * z)


def f4_pauli_map(element: F4Element) -> str:
    return _BITS_TO_LETTER[F4Element(element).pair]


def is_valid_pauli_text(text: str) -> bool:
    """Check if a string is a well-formed Pauli letter string."""
    try:
        PauliString.from_text(text)
    except ValueError:
        return False
    return True


@dataclass(frozen=True, order=True)
class PauliString:
    """Phase-free Pauli operator on n sites in packed (x|z) form."""

    n: int
    x: int
    z: int

    def __post_init__(self):
        limit = 1 << self.n
        if self.n < 0 or not (0 <= self.x < limit and 0 <= self.z < limit):
            raise InvalidInputError(f"Bit words do not fit {self.n} sites")

    @classmethod
    def from_text(cls, text: str) -> "PauliString":
        x = z = 0
        for i, letter in enumerate(text):
            if letter not in _LETTER_TO_BITS:
                raise InvalidInputError(f"Unknown Pauli letter {letter!r} in {text!r}")
            bx, bz = _LETTER_TO_BITS[letter]
            x |= bx << i
            z |= bz << i
        return cls(len(text), x, z)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    @classmethod
    def on_sites(cls, n: int, letters: Mapping[int, str]) -> "PauliString":
        """Build a string from a 0-based {site: letter} mapping."""
        x = z = 0
        for site, letter in letters.items():
            if not 0 <= site < n:
                raise InvalidInputError(f"Site {site} outside 0..{n - 1}")
            bx, bz = _LETTER_TO_BITS[letter]
            x |= bx << site
            z |= bz << site
        return cls(n, x, z)

    @classmethod
    def single(cls, n: int, site: int, letter: str) -> "PauliString":
        return cls.on_sites(n, {site: letter})

    @classmethod
    def from_f4(cls, values: Iterable[int]) -> "PauliString":
        x = z = 0
        n = 0
        for i, value in enumerate(values):
            a, b = F4Element(int(value)).pair
            x |= a << i
            z |= b << i
            n = i + 1
        return cls(n, x, z)

    def letter(self, site: int) -> str:
        return _BITS_TO_LETTER[((self.x >> site) & 1, (self.z >> site) & 1)]

    def to_text(self) -> str:
        return "".join(self.letter(i) for i in range(self.n))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PauliString({self.to_text()!r})"

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> Tuple[int, ...]:
        mask = self.x | self.z
        return tuple(i for i in range(self.n) if (mask >> i) & 1)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def restrict(self, sites: Sequence[int]) -> "PauliString":
        """Keep only the listed sites, in the listed order."""
        return PauliString.on_sites(
            len(sites), {j: self.letter(site) for j, site in enumerate(sites)}
        )

    def mask(self, sites: Iterable[int]) -> "PauliString":
        """Same length, identity outside the listed sites."""
        keep = 0
        for site in sites:
            keep |= 1 << site
        return PauliString(self.n, self.x & keep, self.z & keep)

    def commutes_with(self, other: "PauliString") -> bool:
        return symplectic_inner(self, other) == 0

    def anticommuting_sites(self, other: "PauliString") -> Tuple[int, ...]:
        _check_lengths(self, other)
        local = (self.x & other.z) ^ (self.z & other.x)
        return tuple(i for i in range(self.n) if (local >> i) & 1)

    def to_f4(self) -> galois.FieldArray:
        return GF4([((self.x >> i) & 1) + 2 * ((self.z >> i) & 1) for i in range(self.n)])

    def to_symplectic(self) -> galois.FieldArray:
        """Binary vector (x_1..x_n | z_1..z_n)."""
        bits = [(self.x >> i) & 1 for i in range(self.n)]
        bits += [(self.z >> i) & 1 for i in range(self.n)]
        return GF2(bits)

    @classmethod
    def from_symplectic(cls, vector: Sequence[int]) -> "PauliString":
        n = len(vector) // 2
        x = sum(int(vector[i]) << i for i in range(n))
        z = sum(int(vector[n + i]) << i for i in range(n))
        return cls(n, x, z)


def _check_lengths(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise InvalidInputError(f"Length mismatch: {p.n} vs {q.n} sites")


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Phase-free product: XOR of the (x|z) words."""
    _check_lengths(p, q)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z)


def symplectic_inner(p: PauliString, q: PauliString) -> int:
    """1 iff p and q anticommute."""
    _check_lengths(p, q)
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() & 1


def symplectic_form(n: int) -> galois.FieldArray:
    """The 2n x 2n block form exchanging the x and z halves."""
    omega = GF2.Zeros((2 * n, 2 * n))
    omega[:n, n:] = GF2.Identity(n)
    omega[n:, :n] = GF2.Identity(n)
    return omega


def trace_hermitian_inner(u: Sequence[int], v: Sequence[int]) -> int:
    """Trace-Hermitian form sum_i (u_i v_i^2 + v_i u_i^2) over F4."""
    if len(u) != len(v):
        raise InvalidInputError(f"Length mismatch: {len(u)} vs {len(v)}")
    if len(u) == 0:
        return 0
    fu, fv = GF4(np.asarray(u, dtype=int)), GF4(np.asarray(v, dtype=int))
    total = np.sum(fu * fv**2 + fv * fu**2)
    # The form takes values in the prime subfield.
    return int(total)


def parse_f4_vector(literals: Sequence[str]) -> Tuple[F4Element, ...]:
    return tuple(F4Element.parse(literal) for literal in literals)
