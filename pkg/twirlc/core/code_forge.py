"""
Code Construction Module.

Additive codes over F4 stored as Pauli-string generators (binary codes ride
along as X-type strings), their duals and distances, the orthogonal arrays
they induce, and the named constructions used to build decoupling groups:
first-order Reed-Muller families, linear and additive projective-geometry
codes, cap sets, the hexacode, and the Heisenberg/chirality expansions.

Every construction returns the *generator* code whose codewords are the
decoupling frames; its dual is the check code, so the distance guarantees
of a construction are stated as ``dual_distance``.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from twirlc.config import settings
from twirlc.core.errors import (
    CodeTooLargeError,
    ConstructionError,
    InfeasibleError,
    InvalidInputError,
)
from twirlc.core.field_pauli import GF2, GF4, PauliString, symplectic_inner

logger = logging.getLogger(__name__)

F4_LETTERS = ("I", "X", "Y", "Z")
F2_LETTERS = ("I", "X")

# Additive generators of the hexacode (1 -> 1, w -> 2, 1+w -> 3).
HEXACODE_ROWS = (
    (1, 0, 0, 1, 1, 2),
    (0, 1, 0, 1, 2, 1),
    (0, 0, 1, 2, 1, 1),
    (2, 0, 0, 2, 2, 3),
    (0, 2, 0, 2, 3, 2),
    (0, 0, 2, 3, 2, 2),
)

TRIANGLE_UNIVERSAL = ("XIX", "XYZ", "YIY", "YZX")
REDUCED_HEISENBERG = ("XYZ", "YZX")
CHIRALITY_FIVE = ("ZXXZY", "YZXXZ", "YZZYX", "XYZZY")


def ceil_log2(value: int) -> int:
    return max(0, (value - 1).bit_length())


def ceil_log4(value: int) -> int:
    exponent = 0
    while 4**exponent < value:
        exponent += 1
    return exponent


def parity_dimension(even_bound: int, odd_bound: int) -> int:
    """Smallest h with 2^h >= even_bound (h even) or 2^h >= odd_bound (h odd)."""
    h = 1
    while True:
        bound = even_bound if h % 2 == 0 else odd_bound
        if 2**h >= bound:
            return h
        h += 1


def _symplectic_matrix(strings: Sequence[PauliString]) -> galois.FieldArray:
    n = strings[0].n
    rows = []
    for s in strings:
        rows.append([(s.x >> i) & 1 for i in range(n)] + [(s.z >> i) & 1 for i in range(n)])
    return GF2(rows)


def gf2_rank(strings: Sequence[PauliString]) -> int:
    if not strings:
        return 0
    return int(np.linalg.matrix_rank(_symplectic_matrix(strings)))


@dataclass(frozen=True)
class AdditiveCode:
    """Additive code over F4 given by F2-independent generators."""

    n: int
    generators: Tuple[PauliString, ...]
    alphabet: str = "F4"
    name: str = ""

    def __post_init__(self):
        if self.alphabet not in ("F2", "F4"):
            raise InvalidInputError(f"Unknown alphabet {self.alphabet!r}")
        for g in self.generators:
            if g.n != self.n:
                raise InvalidInputError(f"Generator {g} does not have length {self.n}")
            if self.alphabet == "F2" and g.z:
                raise InvalidInputError(f"Binary code generator {g} is not X-type")
        if gf2_rank(self.generators) != len(self.generators):
            raise InvalidInputError("Generators are not independent over F2")

    @classmethod
    def span(
        cls,
        n: int,
        strings: Sequence[PauliString],
        alphabet: str = "F4",
        name: str = "",
    ) -> "AdditiveCode":
        """Code spanned by strings, keeping the first independent ones in order."""
        basis: List[PauliString] = []
        for s in strings:
            if s.is_identity():
                continue
            if gf2_rank(basis + [s]) > len(basis):
                basis.append(s)
        return cls(n, tuple(basis), alphabet, name)

    @classmethod
    def from_texts(cls, texts: Sequence[str], alphabet: str = "F4", name: str = "") -> "AdditiveCode":
        strings = [PauliString.from_text(t) for t in texts]
        if not strings:
            raise InvalidInputError("At least one generator is needed to infer the length")
        return cls(strings[0].n, tuple(strings), alphabet, name)

    @classmethod
    def from_f4_rows(cls, rows: Sequence[Sequence[int]], name: str = "") -> "AdditiveCode":
        strings = [PauliString.from_f4(row) for row in rows]
        return cls.span(strings[0].n, strings, "F4", name)

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 2**self.dimension

    def texts(self) -> List[str]:
        return [g.to_text() for g in self.generators]

    def f4_table(self) -> List[List[int]]:
        return [[int(v) for v in g.to_f4()] for g in self.generators]

    def codewords(self) -> Iterator[PauliString]:
        """All codewords, indexed by the binary exponent vector of the generators."""
        if self.dimension > settings.MAX_CODE_LOG2:
            raise CodeTooLargeError(
                f"Code {self.name or ''} has 2^{self.dimension} codewords; "
                f"limit is 2^{settings.MAX_CODE_LOG2}"
            )
        for index in range(self.size):
            x = z = 0
            for j, g in enumerate(self.generators):
                if (index >> j) & 1:
                    x ^= g.x
                    z ^= g.z
            yield PauliString(self.n, x, z)

    def contains(self, p: PauliString) -> bool:
        if p.is_identity():
            return True
        if self.alphabet == "F2" and p.z:
            return False
        return gf2_rank(list(self.generators) + [p]) == self.dimension

    def same_span(self, other: "AdditiveCode") -> bool:
        return (
            self.n == other.n
            and self.dimension == other.dimension
            and all(self.contains(g) for g in other.generators)
        )

    def restrict(self, columns: Sequence[int]) -> "AdditiveCode":
        restricted = [g.restrict(columns) for g in self.generators]
        return AdditiveCode.span(len(columns), restricted, self.alphabet, self.name)


@dataclass(frozen=True)
class OrthogonalArray:
    """Rows of letters whose every k-column projection is uniform."""

    rows: Tuple[str, ...]
    factors: int
    alphabet: Tuple[str, ...]
    strength: int

    @property
    def runs(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical representative: first nonzero coordinate equals 1."""

    coords: Tuple[int, ...]
    q: int = 4

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class ProjectiveLine:
    """Line of PG(h-1, 2) spanned by two of its points."""

    first: ProjectivePoint
    second: ProjectivePoint

    def points(self) -> Tuple[ProjectivePoint, ...]:
        third = tuple(a ^ b for a, b in zip(self.first.coords, self.second.coords))
        return (self.first, self.second, ProjectivePoint(third, 2))


def dual(c: AdditiveCode) -> AdditiveCode:
    """Trace-Hermitian dual (Euclidean dual for binary codes)."""
    n = c.n
    if c.alphabet == "F2":
        if not c.generators:
            basis = [PauliString.single(n, i, "X") for i in range(n)]
        else:
            matrix = GF2([[(g.x >> i) & 1 for i in range(n)] for g in c.generators])
            basis = [
                PauliString(n, sum(int(v[i]) << i for i in range(n)), 0)
                for v in matrix.null_space()
            ]
        return AdditiveCode(n, tuple(basis), "F2", f"dual({c.name})")

    if not c.generators:
        basis = [PauliString.single(n, i, letter) for letter in "XZ" for i in range(n)]
    else:
        # Row (z|x) of a generator pairs with (x|z) of a string to give the symplectic form.
        swapped = [PauliString(n, g.z, g.x) for g in c.generators]
        null = _symplectic_matrix(swapped).null_space()
        basis = [PauliString.from_symplectic(v) for v in null]
    return AdditiveCode(n, tuple(basis), "F4", f"dual({c.name})")


def min_distance(c: AdditiveCode) -> int:
    """Minimum weight of a nonzero codeword; n + 1 for the zero code."""
    best = c.n + 1
    for word in c.codewords():
        if not word.is_identity():
            best = min(best, word.weight)
            if best == 1:
                break
    return best


def _column_syndromes(c: AdditiveCode) -> List[Dict[str, int]]:
    letters = ("Z",) if c.alphabet == "F2" else ("X", "Y", "Z")
    table = []
    for j in range(c.n):
        row = {}
        for letter in letters:
            probe = PauliString.single(c.n, j, letter)
            row[letter] = sum(
                symplectic_inner(g, probe) << i for i, g in enumerate(c.generators)
            )
        table.append(row)
    return table


def dual_distance(c: AdditiveCode) -> int:
    """Minimum weight of a nonzero dual codeword, found by weight-ordered search."""
    syndromes = _column_syndromes(c)
    for weight in range(1, c.n + 1):
        for support in combinations(range(c.n), weight):
            choices = [list(syndromes[j].values()) for j in support]
            for combo in product(*choices):
                total = 0
                for value in combo:
                    total ^= value
                if total == 0:
                    return weight
    return c.n + 1


def verify_oa_strength(oa: OrthogonalArray, k: int) -> bool:
    """Exhaustively check that every k columns are uniform over the alphabet."""
    if k == 0:
        return oa.runs > 0
    if k > oa.factors:
        return False
    cells = len(oa.alphabet) ** k
    if oa.runs % cells:
        return False
    expected = oa.runs // cells
    for columns in combinations(range(oa.factors), k):
        counts = Counter(tuple(row[j] for j in columns) for row in oa.rows)
        if len(counts) != cells or any(v != expected for v in counts.values()):
            return False
    return True


def to_orthogonal_array(c: AdditiveCode) -> OrthogonalArray:
    """Codewords as OA rows of strength dual_distance - 1, verified.

    Raises:
        ConstructionError: the rows fail their own strength check.
    """
    strength = min(dual_distance(c) - 1, c.n)
    alphabet = F2_LETTERS if c.alphabet == "F2" else F4_LETTERS
    oa = OrthogonalArray(
        rows=tuple(word.to_text() for word in c.codewords()),
        factors=c.n,
        alphabet=alphabet,
        strength=strength,
    )
    if not verify_oa_strength(oa, strength):
        raise ConstructionError(f"Codewords of {c.name} are not an OA of strength {strength}")
    return oa


# Reed-Muller families


def _rm_rows(m: int) -> List[List[int]]:
    """Constant row then x_1..x_m; column j carries x_i = 1 - bit (m - i) of j."""
    length = 2**m
    rows = [[1] * length]
    for i in range(1, m + 1):
        rows.append([1 - ((j >> (m - i)) & 1) for j in range(length)])
    return rows


def rm_code(m: int) -> AdditiveCode:
    """Binary RM(1, m) as X-type strings."""
    if m < 1:
        raise InvalidInputError("RM(1, m) needs m >= 1")
    strings = [
        PauliString.from_text("".join("X" if bit else "I" for bit in row))
        for row in _rm_rows(m)
    ]
    return AdditiveCode(2**m, tuple(strings), "F2", f"RM(1,{m})")


def _substitution(row: int, m: int) -> Tuple[str, str]:
    # (letter for 1, letter for 0)
    if row == 0:
        return "X", "I"
    if row == m:
        return "Y", "Z"
    return ("X", "Z") if row % 2 else ("X", "I")


def _substituted_rows(m: int, rows: Sequence[int], chi: int) -> List[PauliString]:
    table = _rm_rows(m)
    strings = []
    for i in rows:
        one, zero = _substitution(i, m)
        strings.append(
            PauliString.from_text("".join(one if bit else zero for bit in table[i][:chi]))
        )
    return strings


def _check_column_rule(code: AdditiveCode) -> None:
    for j in range(code.n):
        letters = {g.letter(j) for g in code.generators} - {"I"}
        if len(letters) < 2:
            raise ConstructionError(f"Column {j + 1} of {code.name} has letters {letters}")


def rm_universal(m: int, chi: Optional[int] = None) -> AdditiveCode:
    """Pauli-substituted RM(1, m) keeping the first chi columns.

    Each kept column carries at least two distinct non-identity letters, so
    every 1-local term is detected, and the Z pattern of every column is the
    RM column, so Z-type terms up to weight 3 are detected.
    """
    chi = 2**m if chi is None else chi
    if not 1 <= chi <= 2**m:
        raise InvalidInputError(f"rm_universal needs 1 <= chi <= 2^{m}")
    strings = _substituted_rows(m, range(m + 1), chi)
    code = AdditiveCode.span(chi, strings, "F4", f"rm_universal({m},{chi})")
    _check_column_rule(code)
    return code


def rm_universal_for(chi: int) -> AdditiveCode:
    return rm_universal(max(1, ceil_log2(chi)), chi)


def rm_punctured(m: int, chi: Optional[int] = None) -> AdditiveCode:
    """Substituted RM(1, m) without the constant row and the all-zero column."""
    chi = 2**m - 1 if chi is None else chi
    if not 1 <= chi <= 2**m - 1:
        raise InvalidInputError(f"rm_punctured needs 1 <= chi <= 2^{m} - 1")
    strings = _substituted_rows(m, range(1, m + 1), chi)
    return AdditiveCode.span(chi, strings, "F4", f"rm_punctured({m},{chi})")


def rm_punctured_for(chi: int) -> AdditiveCode:
    return rm_punctured(max(2, ceil_log2(chi + 1)), chi)


def rm_bounded(chi: int, variant: str = "universal") -> AdditiveCode:
    """X-type RM rows plus Z on every column, for finite-width pulses.

    ``universal`` keeps the constant row of RM(1, ceil(log2 chi)) and targets
    Z-type terms up to weight 3; ``zz`` uses the coordinate rows on nonzero
    points of F2^m with m = ceil(log2(chi + 1)) and targets ZZ.
    """
    if chi < 1:
        raise InvalidInputError("rm_bounded needs chi >= 1")
    if variant == "universal":
        m = max(1, ceil_log2(chi))
        rows = _rm_rows(m)
    elif variant == "zz":
        m = max(1, ceil_log2(chi + 1))
        rows = _rm_rows(m)[1:]
    else:
        raise InvalidInputError(f"Unknown rm_bounded variant {variant!r}")
    strings = [
        PauliString.from_text("".join("X" if bit else "I" for bit in row[:chi]))
        for row in rows
    ]
    strings.append(PauliString.from_text("Z" * chi))
    return AdditiveCode.span(chi, strings, "F4", f"rm_bounded({chi},{variant})")


# Projective geometry


def pg_points(n: int, q: int = 4) -> List[ProjectivePoint]:
    """One canonical point per class of PG(n, q), by weight then coordinates."""
    if q not in (2, 4):
        raise InvalidInputError("Only q = 2 and q = 4 are supported")
    points = []
    for coords in product(range(q), repeat=n + 1):
        nonzero = [c for c in coords if c]
        if nonzero and nonzero[0] == 1:
            points.append(coords)
    points.sort(key=lambda v: (sum(1 for c in v if c), tuple(-c for c in v)))
    return [ProjectivePoint(tuple(v), q) for v in points]


def normalize_point(vector: Sequence[int]) -> ProjectivePoint:
    values = GF4(np.asarray(vector, dtype=int))
    nonzero = np.flatnonzero(values.view(np.ndarray))
    if len(nonzero) == 0:
        raise InvalidInputError("The zero vector is not a projective point")
    scaled = values / values[nonzero[0]]
    return ProjectivePoint(tuple(int(v) for v in scaled), 4)


def line_points(a: ProjectivePoint, b: ProjectivePoint) -> List[ProjectivePoint]:
    """The five points of the PG(n, 4) line through a and b."""
    fa, fb = GF4(list(a.coords)), GF4(list(b.coords))
    points = [b]
    for scalar in (1, 2, 3):
        points.append(normalize_point(fa + GF4(scalar) * fb))
    return points


def independent_triple(a: ProjectivePoint, b: ProjectivePoint, c: ProjectivePoint) -> bool:
    matrix = GF4([list(a.coords), list(b.coords), list(c.coords)])
    return int(np.linalg.matrix_rank(matrix)) == 3


def is_cap(points: Sequence[ProjectivePoint]) -> bool:
    return all(independent_triple(*triple) for triple in combinations(points, 3))


def linear_pg_code(n: int, columns: Sequence[ProjectivePoint]) -> AdditiveCode:
    """Generator code whose F4 rows form the check matrix with the given columns.

    The rows of H and their w-multiples generate the frames; the check code
    (the dual) has distance at least 3 because the points are pairwise
    independent.

    Raises:
        InvalidInputError: a point is repeated or has the wrong dimension.
    """
    if len(set(columns)) != len(columns):
        raise InvalidInputError("linear_pg_code: repeated projective point")
    if not columns or any(len(p.coords) != n + 1 for p in columns):
        raise InvalidInputError(f"linear_pg_code: points must have {n + 1} coordinates")
    matrix = GF4([[p.coords[r] for p in columns] for r in range(n + 1)])
    strings = []
    for row in matrix:
        strings.append(PauliString.from_f4(row))
        strings.append(PauliString.from_f4(GF4(2) * row))
    return AdditiveCode.span(len(columns), strings, "F4", f"linear_pg({n},{len(columns)})")


def hexacode() -> AdditiveCode:
    return AdditiveCode.from_f4_rows(HEXACODE_ROWS, name="hexacode")


def cap_set(n: int) -> List[ProjectivePoint]:
    """A cap of PG(n, 4): the hexacode columns for n = 2, greedy otherwise."""
    if n < 2:
        raise InvalidInputError("cap_set needs n >= 2")
    if n == 2:
        columns = list(zip(*HEXACODE_ROWS[:3]))
        cap = [normalize_point(col) for col in columns]
    else:
        cap: List[ProjectivePoint] = []
        blocked = set()
        for point in pg_points(n, 4):
            if point in blocked:
                continue
            for other in cap:
                blocked.update(line_points(other, point))
            cap.append(point)
            blocked.add(point)
    if not is_cap(cap):
        raise ConstructionError(f"Greedy cap in PG({n},4) has three collinear points")
    logger.debug(f"cap_set({n}) has {len(cap)} points")
    return cap


def _bits(value: int, h: int) -> Tuple[int, ...]:
    return tuple((value >> (h - 1 - r)) & 1 for r in range(h))


def _line(a: int, b: int, h: int) -> ProjectiveLine:
    return ProjectiveLine(ProjectivePoint(_bits(a, h), 2), ProjectivePoint(_bits(b, h), 2))


def spread_pg32() -> List[ProjectiveLine]:
    """A complete 1-spread of PG(3, 2): five lines covering all 15 points."""
    pairs = [
        ((1, 0, 0, 0), (0, 1, 0, 0)),
        ((0, 0, 1, 0), (0, 0, 0, 1)),
        ((1, 1, 0, 1), (0, 1, 1, 0)),
        ((1, 0, 1, 0), (0, 1, 0, 1)),
        ((1, 1, 1, 0), (0, 1, 1, 1)),
    ]
    lines = [ProjectiveLine(ProjectivePoint(a, 2), ProjectivePoint(b, 2)) for a, b in pairs]
    if not lines_disjoint(lines):
        raise ConstructionError("spread_pg32 lines intersect")
    return lines


def lines_disjoint(lines: Sequence[ProjectiveLine]) -> bool:
    seen = set()
    for line in lines:
        points = {p.coords for p in line.points()}
        if seen & points:
            return False
        seen |= points
    return True


def desarguesian_spread(h: int) -> List[ProjectiveLine]:
    """Spread of PG(h-1, 2), h even, from the F4-lines of GF(2^h)."""
    if h % 2:
        raise InvalidInputError("A full spread needs an even dimension")
    field = galois.GF(2**h)
    w = field.primitive_element ** ((2**h - 1) // 3)
    seen = set()
    lines = []
    for value in range(1, 2**h):
        if value in seen:
            continue
        e = field(value)
        members = sorted({int(e), int(e * w), int(e * w * w)})
        seen.update(members)
        lines.append(_line(members[0], members[1], h))
    return lines


def partial_spread_search(h: int, count: int) -> List[ProjectiveLine]:
    """Find ``count`` pairwise disjoint lines in PG(h-1, 2) by backtracking.

    Branches on the lowest uncovered point: cover it with a line, or leave it
    as one of the allowed holes.

    Raises:
        InfeasibleError: the node budget ran out; the detail names the
            largest set found.
    """
    top = 2**h
    holes = (top - 1) - 3 * count
    if holes < 0:
        raise InfeasibleError(f"PG({h - 1},2) cannot hold {count} disjoint lines")
    limit = settings.SPREAD_SEARCH_LIMIT
    nodes = 0
    best: List[Tuple[int, int]] = []
    chosen: List[Tuple[int, int]] = []

    def search(used: int, holes_left: int) -> bool:
        nonlocal nodes, best
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) == count:
            return True
        if nodes > limit:
            return False
        p = next((v for v in range(1, top) if not (used >> v) & 1), None)
        if p is None:
            return False
        for b in range(p + 1, top):
            c = p ^ b
            if c > b and not (used >> b) & 1 and not (used >> c) & 1:
                chosen.append((p, b))
                if search(used | (1 << p) | (1 << b) | (1 << c), holes_left):
                    return True
                chosen.pop()
        if holes_left > 0:
            return search(used | (1 << p), holes_left - 1)
        return False

    if not search(1, holes):
        raise InfeasibleError(
            f"Spread search in PG({h - 1},2) found only {len(best)} of {count} lines"
        )
    return [_line(a, b, h) for a, b in chosen]


def lines_to_code(lines: Sequence[ProjectiveLine], name: str = "") -> AdditiveCode:
    """Map each line (a, b) to the column a + b*w over the h binary rows."""
    h = len(lines[0].first.coords)
    strings = []
    for r in range(h):
        strings.append(
            PauliString.from_f4(
                [line.first.coords[r] + 2 * line.second.coords[r] for line in lines]
            )
        )
    code = AdditiveCode.span(len(lines), strings, "F4", name or f"additive_pg({len(lines)})")
    if code.dimension != h:
        logger.warning(f"{code.name}: {h} rows but rank {code.dimension}")
    return code


def additive_dimension(chi: int) -> int:
    return parity_dimension(3 * chi + 1, 3 * chi + 5)


def additive_pg_code(chi: int) -> AdditiveCode:
    """Universal 2-local code on chi columns from a partial 1-spread."""
    if chi < 1:
        raise InvalidInputError("additive_pg_code needs chi >= 1")
    h = additive_dimension(chi)
    if h == 4:
        lines = spread_pg32()[:chi]
    elif h % 2 == 0:
        lines = desarguesian_spread(h)[:chi]
    else:
        lines = partial_spread_search(h, chi)
    if not lines_disjoint(lines):
        raise ConstructionError("Spread lines intersect")
    code = lines_to_code(lines, f"additive_pg({chi})")
    if chi > 1 and dual_distance(code) < 3:
        raise ConstructionError(f"{code.name} does not reach dual distance 3")
    return code


def heisenberg_expand(code: AdditiveCode) -> AdditiveCode:
    """Replace every column c by the three columns c, w*c, w^2*c."""
    matrix = GF4([[int(v) for v in g.to_f4()] for g in code.generators])
    w = GF4(2)
    columns = []
    for j in range(code.n):
        column = matrix[:, j]
        columns.extend([column, w * column, w * w * column])
    expanded = [
        PauliString.from_f4([int(col[r]) for col in columns])
        for r in range(code.dimension)
    ]
    return AdditiveCode.span(3 * code.n, expanded, "F4", f"heisenberg({code.name})")


# Tailored verification


def tailored_terms(n: int, chirality: bool = False) -> List[PauliString]:
    """1-local terms, Heisenberg pair terms and optionally chirality triples."""
    terms = [PauliString.single(n, j, letter) for j in range(n) for letter in "XYZ"]
    for a, b in combinations(range(n), 2):
        terms.extend(PauliString.on_sites(n, {a: p, b: p}) for p in "XYZ")
    if chirality:
        for sites in combinations(range(n), 3):
            for letters in permutations("XYZ"):
                terms.append(PauliString.on_sites(n, dict(zip(sites, letters))))
    return terms


def undetected_terms(
    generators: Sequence[PauliString], terms: Sequence[PauliString]
) -> List[PauliString]:
    return [t for t in terms if all(symplectic_inner(g, t) == 0 for g in generators)]


def verify_tailored(code: AdditiveCode, chirality: bool = False) -> AdditiveCode:
    missed = undetected_terms(code.generators, tailored_terms(code.n, chirality))
    if missed:
        raise ConstructionError(
            f"{code.name} misses {len(missed)} terms, e.g. {missed[0]}", term=missed[0]
        )
    return code


@dataclass(frozen=True)
class ChiralityCodes:
    intermediate: Tuple[PauliString, ...]
    four: AdditiveCode
    five: AdditiveCode


def chirality_expand() -> ChiralityCodes:
    """Tailored 1-local + Heisenberg + chirality codes on 4 and 5 colors.

    The last three hexacode cap columns plus the w-multiple of the last one
    give six generators on four columns; a minimum cover over the target
    terms keeps four of them.
    """
    # dd_compiler imports this module
    from twirlc.core.dd_compiler import TermSet, min_cover

    matrix = GF4([list(row) for row in HEXACODE_ROWS])
    columns = [matrix[:, 3], matrix[:, 4], matrix[:, 5], GF4(2) * matrix[:, 5]]
    intermediate = tuple(
        PauliString.from_f4([int(col[r]) for col in columns]) for r in range(len(HEXACODE_ROWS))
    )
    cover = min_cover(intermediate, TermSet.suppress(tailored_terms(4, chirality=True)))
    four = verify_tailored(AdditiveCode(4, cover.generators, "F4", "chirality4"), chirality=True)
    five = verify_tailored(AdditiveCode.from_texts(CHIRALITY_FIVE, name="chirality5"), chirality=True)
    return ChiralityCodes(intermediate=intermediate, four=four, five=five)


# PG(2, 2) table search


@dataclass(frozen=True)
class Pg22Solution:
    """Cells (row point, column point, sum point) as 1-based labels."""

    cells: Tuple[Tuple[int, int, int], ...]
    code: AdditiveCode


def pg22_addition_table() -> Dict[Tuple[int, int], Optional[int]]:
    points = [p.coords for p in pg_points(2, 2)]
    index = {coords: i + 1 for i, coords in enumerate(points)}
    table: Dict[Tuple[int, int], Optional[int]] = {}
    for i, a in enumerate(points, start=1):
        for j, b in enumerate(points, start=1):
            total = tuple(x ^ y for x, y in zip(a, b))
            table[(i, j)] = index.get(total)
    return table


def _pg22_code(cells: Sequence[Tuple[int, int, int]]) -> AdditiveCode:
    points = [p.coords for p in pg_points(2, 2)]
    strings = [
        PauliString.from_f4(
            [points[i - 1][r] + 2 * points[j - 1][r] for i, j, _ in cells]
        )
        for r in range(3)
    ]
    return AdditiveCode(len(cells), tuple(strings), "F4", f"pg22({len(cells)})")


def pg22_sudoku_search(exhaustive: bool = False) -> Pg22Solution:
    """Cells of the PG(2, 2) sum table with distinct rows, columns and sums.

    The greedy pass walks rows in order and tries columns cyclically after
    the row; it stops at a maximal (non-extendable) set. The exhaustive pass
    backtracks over the same order and returns the first maximum found.
    """
    table = pg22_addition_table()

    def successors(i: int) -> List[int]:
        return [(i - 1 + offset) % 7 + 1 for offset in range(1, 7)]

    if not exhaustive:
        cells: List[Tuple[int, int, int]] = []
        cols, sums = set(), set()
        for i in range(1, 8):
            for j in successors(i):
                s = table[(i, j)]
                if j not in cols and s not in sums:
                    cells.append((i, j, s))
                    cols.add(j)
                    sums.add(s)
                    break
    else:
        best: List[Tuple[int, int, int]] = []
        current: List[Tuple[int, int, int]] = []

        def search(i: int, cols: frozenset, sums: frozenset) -> bool:
            nonlocal best
            if len(current) > len(best):
                best = list(current)
            if len(best) == 7 or i > 7 or len(current) + (8 - i) <= len(best):
                return len(best) == 7
            for j in successors(i):
                s = table[(i, j)]
                if j not in cols and s not in sums:
                    current.append((i, j, s))
                    if search(i + 1, cols | {j}, sums | {s}):
                        return True
                    current.pop()
            return search(i + 1, cols, sums)

        search(1, frozenset(), frozenset())
        cells = best
    code = _pg22_code(cells)
    return Pg22Solution(cells=tuple(cells), code=code)


def reduced_heisenberg_code() -> AdditiveCode:
    return AdditiveCode.from_texts(REDUCED_HEISENBERG, name="reduced_heisenberg")


def triangle_universal_code() -> AdditiveCode:
    return AdditiveCode.from_texts(TRIANGLE_UNIVERSAL, name="triangle_universal")


def universal3_code(chi: int) -> AdditiveCode:
    """Linear cap-set code on chi columns (strength-3 frames)."""
    n = 2
    while True:
        cap = cap_set(n)
        if len(cap) >= chi:
            return linear_pg_code(n, cap[:chi])
        n += 1


def linear_pg_code_for(chi: int) -> AdditiveCode:
    """Linear PG code on the first chi points of the smallest PG(n, 4) that fits."""
    n = max(0, ceil_log4(3 * chi + 1) - 1)
    return linear_pg_code(n, pg_points(n, 4)[:chi])
