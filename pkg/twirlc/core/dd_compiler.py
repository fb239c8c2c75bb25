"""
Decoupling Verdict and Synthesis Module.

Decides which Pauli terms a decoupling group suppresses (first order, bang-bang
or bounded control), synthesizes selective groups from a preserved
Hamiltonian by symplectic null space plus minimum set cover, tabulates the
sequence-length scaling of the code families, and picks the construction for
a compile target.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from twirlc.config import settings
from twirlc.core import code_forge
from twirlc.core.code_forge import AdditiveCode, ceil_log2, ceil_log4, gf2_rank, parity_dimension
from twirlc.core.device_graph import QuotientGraph, model_terms
from twirlc.core.errors import (
    ConstructionError,
    CounterexampleError,
    InfeasibleError,
    InvalidInputError,
    TwirlcError,
    UnsupportedChiError,
)
from twirlc.core.field_pauli import PauliString, symplectic_inner
from twirlc.core.interactions import (
    TARGET_LOCALITY,
    TARGET_MODEL,
    ControlMode,
    InteractionModel,
    Target,
)

logger = logging.getLogger(__name__)


class TermRole(str, Enum):
    SUPPRESS = "suppress"
    PRESERVE = "preserve"


class TermStatus(str, Enum):
    SUPPRESSED = "suppressed"
    PRESERVED = "preserved"


@dataclass(frozen=True)
class Term:
    pauli: PauliString
    coefficient: float = 1.0
    role: TermRole = TermRole.SUPPRESS


@dataclass(frozen=True)
class TermSet:
    """Terms on n sites, deduplicated by string (coefficients of repeats add)."""

    n: int
    terms: Tuple[Term, ...] = ()

    @classmethod
    def build(cls, terms: Iterable[Term], n: Optional[int] = None) -> "TermSet":
        merged: Dict[PauliString, Term] = {}
        for term in terms:
            if n is None:
                n = term.pauli.n
            if term.pauli.n != n:
                raise InvalidInputError(f"Term {term.pauli} does not act on {n} sites")
            old = merged.get(term.pauli)
            if old is None:
                merged[term.pauli] = term
                continue
            if old.role != term.role:
                raise InvalidInputError(f"Term {term.pauli} is both preserved and suppressed")
            merged[term.pauli] = Term(term.pauli, old.coefficient + term.coefficient, term.role)
        return cls(n if n is not None else 0, tuple(merged.values()))

    @classmethod
    def suppress(cls, strings: Iterable[PauliString], n: Optional[int] = None) -> "TermSet":
        return cls.build((Term(s) for s in strings), n)

    @classmethod
    def preserve(cls, strings: Iterable[PauliString], n: Optional[int] = None) -> "TermSet":
        return cls.build((Term(s, role=TermRole.PRESERVE) for s in strings), n)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def strings(self) -> List[PauliString]:
        return [t.pauli for t in self.terms]

    def targets(self) -> List[PauliString]:
        return [t.pauli for t in self.terms if t.role == TermRole.SUPPRESS]

    def preserved(self) -> List[PauliString]:
        return [t.pauli for t in self.terms if t.role == TermRole.PRESERVE]


@dataclass(frozen=True)
class DDGroup:
    """Abelian Pauli group given by independent generators."""

    n: int
    generators: Tuple[PauliString, ...]
    name: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.n != self.n:
                raise InvalidInputError(f"Generator {g} does not act on {self.n} sites")
        if gf2_rank(self.generators) != len(self.generators):
            raise InvalidInputError(f"Generators of {self.name or 'group'} are not independent")

    @classmethod
    def from_code(cls, code: AdditiveCode) -> "DDGroup":
        return cls(code.n, code.generators, code.name)

    @classmethod
    def from_texts(cls, texts: Sequence[str], name: str = "") -> "DDGroup":
        return cls.from_code(AdditiveCode.from_texts(texts, name=name))

    @classmethod
    def span(cls, n: int, strings: Sequence[PauliString], name: str = "") -> "DDGroup":
        return cls.from_code(AdditiveCode.span(n, strings, "F4", name))

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 2**self.dimension

    def code(self) -> AdditiveCode:
        return AdditiveCode(self.n, self.generators, "F4", self.name)

    def elements(self) -> List[PauliString]:
        """Elements indexed by the binary exponent vector of the generators."""
        return list(self.code().codewords())

    def contains(self, p: PauliString) -> bool:
        return self.code().contains(p)

    def generated_by(self, gammas: Sequence[PauliString]) -> bool:
        return AdditiveCode.span(self.n, gammas).same_span(self.code())


@dataclass(frozen=True)
class TermVerdict:
    term: PauliString
    role: TermRole
    status: TermStatus
    witness: Optional[PauliString] = None
    leak: Optional[PauliString] = None

    @property
    def ok(self) -> bool:
        if self.leak is not None:
            return False
        if self.role == TermRole.SUPPRESS:
            return self.status == TermStatus.SUPPRESSED
        return self.status == TermStatus.PRESERVED


@dataclass(frozen=True)
class Verdict:
    group: str
    entries: Tuple[TermVerdict, ...]
    mode: ControlMode = ControlMode.BANG_BANG

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> List[TermVerdict]:
        return [e for e in self.entries if not e.ok]

    @property
    def first_failure(self) -> Optional[TermVerdict]:
        return next((e for e in self.entries if not e.ok), None)

    def suppressed(self) -> List[PauliString]:
        return [e.term for e in self.entries if e.status == TermStatus.SUPPRESSED]

    def preserved(self) -> List[PauliString]:
        return [e.term for e in self.entries if e.status == TermStatus.PRESERVED]

    def raise_for_failure(self) -> None:
        failure = self.first_failure
        if failure is not None:
            shown = failure.leak or failure.term
            raise CounterexampleError(
                f"{self.group}: {failure.role.value} term {failure.term} fails "
                f"({len(self.failures())} failures), counterexample {shown}",
                term=shown,
                verdict=self,
            )


def suppresses(g: DDGroup, t: PauliString) -> Tuple[bool, Optional[PauliString]]:
    """True with a witness generator iff t anticommutes with some generator."""
    for gamma in g.generators:
        if symplectic_inner(gamma, t):
            return True, gamma
    if g.n != t.n:
        raise InvalidInputError(f"Length mismatch: {g.n} vs {t.n} sites")
    return False, None


def twirl_sign_profile(g: DDGroup, t: PauliString) -> List[int]:
    return [-1 if symplectic_inner(element, t) else 1 for element in g.elements()]


def _term_verdict(g: DDGroup, term: Term) -> TermVerdict:
    suppressed, witness = suppresses(g, term.pauli)
    status = TermStatus.SUPPRESSED if suppressed else TermStatus.PRESERVED
    return TermVerdict(term.pauli, term.role, status, witness)


def check_terms(g: DDGroup, terms: TermSet) -> Verdict:
    """Classify every term; entries keep the input order."""
    with ThreadPoolExecutor(max_workers=max(1, settings.TWIRLC_THREADS)) as pool:
        entries = tuple(pool.map(partial(_term_verdict, g), terms.terms))
    verdict = Verdict(g.name, entries)
    logger.debug(
        f"{g.name}: {len(verdict.suppressed())} suppressed, {len(verdict.preserved())} preserved"
    )
    return verdict


def check_universal(
    g: DDGroup,
    q: QuotientGraph,
    k: int,
    model: Optional[InteractionModel] = None,
    complete: bool = False,
) -> Verdict:
    """Every term of weight <= k the quotient allows must be suppressed."""
    return check_terms(g, TermSet.suppress(model_terms(q, k, model, complete), q.chi))


def selective_nullspace(h_par: TermSet) -> List[PauliString]:
    """Basis of the strings commuting with every term of h_par."""
    code = AdditiveCode.span(h_par.n, h_par.strings())
    return list(code_forge.dual(code).generators)


def kernel_elements(basis: Sequence[PauliString]) -> List[PauliString]:
    n = basis[0].n if basis else 0
    elements = [e for e in AdditiveCode.span(n, basis).codewords() if not e.is_identity()]
    return sorted(elements, key=lambda p: (p.weight, p.to_text()))


@dataclass(frozen=True)
class CoverResult:
    generators: Tuple[PauliString, ...]
    indices: Tuple[int, ...]
    exact: bool
    lower_bound: int

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def gap(self) -> int:
        return self.size - self.lower_bound


def _packing_bound(masks: Sequence[int]) -> int:
    """Targets with pairwise disjoint candidate sets each need their own candidate."""
    used = 0
    count = 0
    for mask in sorted(masks, key=lambda m: bin(m).count("1")):
        if not mask & used:
            used |= mask
            count += 1
    return count


def min_cover(candidates: Sequence[PauliString], h_perp: TermSet) -> CoverResult:
    """Smallest candidate subset such that every target anticommutes with one.

    Exact branch-and-bound up to ``settings.EXACT_COVER_LIMIT`` candidates,
    ties broken by total weight then candidate order; greedy beyond that with
    the packing lower bound reported.

    Raises:
        InfeasibleError: a target commutes with every usable candidate.
    """
    preserved = h_perp.preserved()
    usable = [
        i
        for i, c in enumerate(candidates)
        if all(symplectic_inner(c, p) == 0 for p in preserved)
    ]
    if len(usable) < len(candidates):
        logger.info(f"Dropped {len(candidates) - len(usable)} candidates touching preserved terms")
    targets = h_perp.targets()
    if not targets:
        return CoverResult((), (), True, 0)

    # coverage[i]: bit j set iff candidate usable[i] detects target j
    coverage = []
    for i in usable:
        bits = 0
        for j, t in enumerate(targets):
            if symplectic_inner(candidates[i], t):
                bits |= 1 << j
        coverage.append(bits)
    full = (1 << len(targets)) - 1
    target_masks = []
    for j, t in enumerate(targets):
        mask = sum(1 << i for i, bits in enumerate(coverage) if (bits >> j) & 1)
        if not mask:
            raise InfeasibleError(f"Term {t} commutes with every candidate", term=t)
        target_masks.append(mask)
    weights = [candidates[i].weight for i in usable]
    lower = _packing_bound(target_masks)

    if len(usable) > settings.EXACT_COVER_LIMIT:
        chosen: List[int] = []
        covered = 0
        while covered != full:
            best = max(
                range(len(usable)),
                key=lambda i: (bin(coverage[i] & ~covered).count("1"), -weights[i], -i),
            )
            chosen.append(best)
            covered |= coverage[best]
        chosen.sort()
        result = CoverResult(
            tuple(candidates[usable[i]] for i in chosen),
            tuple(usable[i] for i in chosen),
            False,
            lower,
        )
        logger.warning(f"Greedy cover of size {result.size}, gap at most {result.gap}")
        return result

    suffix = [0] * (len(usable) + 1)
    for i in range(len(usable) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | coverage[i]
    best_key: Optional[Tuple[int, int, Tuple[int, ...]]] = None

    def search(i: int, chosen: List[int], covered: int, weight: int) -> None:
        nonlocal best_key
        if covered == full:
            key = (len(chosen), weight, tuple(chosen))
            if best_key is None or key < best_key:
                best_key = key
            return
        if i == len(usable) or (covered | suffix[i]) != full:
            return
        if best_key is not None and len(chosen) + 1 > best_key[0]:
            return
        if coverage[i] & ~covered:
            chosen.append(i)
            search(i + 1, chosen, covered | coverage[i], weight + weights[i])
            chosen.pop()
        search(i + 1, chosen, covered, weight)

    search(0, [], 0, 0)
    picked = best_key[2]
    return CoverResult(
        tuple(candidates[usable[i]] for i in picked),
        tuple(usable[i] for i in picked),
        True,
        lower,
    )


# Bounded control


def bounded_support(t: PauliString, gammas: Sequence[PauliString]) -> TermSet:
    """Strings reached from t by partial rotations of each generator.

    A finite-width pulse of gamma rotates t on every nonempty subset of the
    sites where gamma and t anticommute.
    """
    reached = {t}
    for gamma in gammas:
        sites = t.anticommuting_sites(gamma)
        for size in range(1, len(sites) + 1):
            for subset in combinations(sites, size):
                reached.add(t * gamma.mask(subset))
    rest = sorted(reached - {t}, key=lambda p: (p.weight, p.to_text()))
    return TermSet.suppress([t] + rest, t.n)


def bounded_closure(terms: Iterable[PauliString], gammas: Sequence[PauliString]) -> List[PauliString]:
    """Fixpoint of bounded_support over a term collection."""
    seen = set(terms)
    frontier = list(seen)
    while frontier:
        fresh = []
        for t in frontier:
            for s in bounded_support(t, gammas).strings():
                if s not in seen:
                    seen.add(s)
                    fresh.append(s)
        frontier = fresh
    return sorted(seen, key=lambda p: (p.weight, p.to_text()))


def check_bounded(g: DDGroup, gammas: Sequence[PauliString], terms: TermSet) -> Verdict:
    """Bang-bang verdict plus: no rotated support element may survive the twirl.

    A support element is harmless when g suppresses it or it is itself a
    preserved term.

    Raises:
        InvalidInputError: gammas do not generate g.
    """
    if not g.generated_by(gammas):
        raise InvalidInputError(f"Interval generators do not generate {g.name}")
    base = check_terms(g, terms)
    preserved = set(terms.preserved())
    entries = []
    for entry in base.entries:
        leak = None
        if entry.ok:
            for s in bounded_support(entry.term, gammas).strings()[1:]:
                if s in preserved:
                    continue
                if not suppresses(g, s)[0]:
                    leak = s
                    break
        entries.append(
            TermVerdict(entry.term, entry.role, entry.status, entry.witness, leak)
        )
    return Verdict(g.name, tuple(entries), ControlMode.BOUNDED)


# Scaling


class ScalingFamily(str, Enum):
    MOD_RM = "mod-RM"
    RM = "RM"
    LIN_PG_D3 = "lin-PG-d3"
    LIN_PG_D4 = "lin-PG-d4"
    ADD_PG_D3 = "add-PG-d3"
    MOD_LIN_PG_D3 = "mod-lin-PG-d3"
    MOD_LIN_PG_D4 = "mod-lin-PG-d4"
    MOD_ADD_PG_D3 = "mod-add-PG-d3"


# Generator counts where the d=4 families are tabulated.
D4_GENERATORS: Dict[ScalingFamily, Dict[int, int]] = {
    ScalingFamily.LIN_PG_D4: {6: 6, 17: 8, 41: 10},
    ScalingFamily.MOD_LIN_PG_D4: {5: 4, 12: 6, 34: 8, 82: 10},
}

# Locality k of the terms each family handles.
FAMILY_LOCALITY: Dict[ScalingFamily, int] = {
    ScalingFamily.MOD_RM: 2,
    ScalingFamily.RM: 3,
    ScalingFamily.LIN_PG_D3: 2,
    ScalingFamily.LIN_PG_D4: 3,
    ScalingFamily.ADD_PG_D3: 2,
    ScalingFamily.MOD_LIN_PG_D3: 2,
    ScalingFamily.MOD_LIN_PG_D4: 3,
    ScalingFamily.MOD_ADD_PG_D3: 2,
}


@dataclass(frozen=True)
class ScalingRow:
    family: ScalingFamily
    chi: int
    generators: int
    length: int
    references: Dict[str, float] = field(default_factory=dict, hash=False)


def generator_count(family: ScalingFamily, chi: int) -> int:
    if chi < 1:
        raise InvalidInputError("chi must be positive")
    if family in D4_GENERATORS:
        table = D4_GENERATORS[family]
        if chi not in table:
            raise UnsupportedChiError(f"{family.value} is tabulated only at chi in {sorted(table)}")
        return table[chi]
    if family == ScalingFamily.MOD_RM:
        return ceil_log2(chi + 1)
    if family == ScalingFamily.RM:
        return ceil_log2(chi) + 1
    if family == ScalingFamily.LIN_PG_D3:
        return 2 * ceil_log4(3 * chi + 1)
    if family == ScalingFamily.ADD_PG_D3:
        return parity_dimension(3 * chi + 1, 3 * chi + 5)
    if family == ScalingFamily.MOD_LIN_PG_D3:
        return 2 * ceil_log4(chi + 1)
    return parity_dimension(chi + 1, chi + 5)


def reference_curves(chi: int, k: int) -> Dict[str, float]:
    power = float(chi ** (k - 1))
    return {
        "baseline_4chi": 4.0 * chi,
        "chi_power": power,
        "chi_power_log": power * math.log2(chi) if chi > 1 else 0.0,
    }


def scaling_table(
    family: ScalingFamily,
    chis: Iterable[int],
    skip_unsupported: bool = False,
    references: bool = False,
) -> List[ScalingRow]:
    """(chi, L) rows with L = 2^generators.

    Raises:
        UnsupportedChiError: a d=4 family is asked for an untabulated chi and
            ``skip_unsupported`` is off.
    """
    rows = []
    for chi in chis:
        try:
            count = generator_count(family, chi)
        except UnsupportedChiError:
            if skip_unsupported:
                continue
            raise
        curves = reference_curves(chi, FAMILY_LOCALITY[family]) if references else {}
        rows.append(ScalingRow(family, chi, count, 2**count, curves))
    return rows


def _expanded(base: Callable[[int], AdditiveCode], chi: int) -> AdditiveCode:
    code = code_forge.heisenberg_expand(base(math.ceil(chi / 3)))
    return code.restrict(list(range(chi)))


def build_family_code(family: ScalingFamily, chi: int) -> AdditiveCode:
    """Construct the code a scaling family tabulates, at one chi."""
    if family == ScalingFamily.MOD_RM:
        return code_forge.rm_punctured_for(chi)
    if family == ScalingFamily.RM:
        return code_forge.rm_universal_for(chi)
    if family == ScalingFamily.LIN_PG_D3:
        return code_forge.linear_pg_code_for(chi)
    if family == ScalingFamily.ADD_PG_D3:
        return code_forge.additive_pg_code(chi)
    if family == ScalingFamily.MOD_LIN_PG_D3:
        return _expanded(code_forge.linear_pg_code_for, chi)
    if family == ScalingFamily.MOD_ADD_PG_D3:
        return _expanded(code_forge.additive_pg_code, chi)
    if family == ScalingFamily.LIN_PG_D4 and chi == 6:
        return code_forge.linear_pg_code(2, code_forge.cap_set(2))
    if family == ScalingFamily.MOD_LIN_PG_D4 and chi == 5:
        return code_forge.chirality_expand().five
    raise UnsupportedChiError(f"No construction for {family.value} at chi={chi}")


@dataclass(frozen=True)
class CrossCheckRow:
    family: ScalingFamily
    chi: int
    formula_length: int
    measured_length: int

    @property
    def match(self) -> bool:
        return self.formula_length == self.measured_length


def cross_check_scaling(chi_max: int = 8, chi_min: int = 2) -> List[CrossCheckRow]:
    """Compare formula lengths against constructed code sizes."""
    rows = []
    for family in ScalingFamily:
        for chi in range(chi_min, chi_max + 1):
            try:
                formula = 2 ** generator_count(family, chi)
                measured = build_family_code(family, chi).size
            except UnsupportedChiError:
                continue
            rows.append(CrossCheckRow(family, chi, formula, measured))
            if formula != measured:
                logger.warning(f"{family.value} chi={chi}: formula {formula}, built {measured}")
    return rows


# Folded Kitaev instance


KITAEV_PAIRS = ((0, 2), (1, 4), (3, 5), (0, 1), (2, 3), (4, 5), (0, 5), (1, 3), (2, 4))
KITAEV_KERNEL = ("ZXZXII", "IIXZXZ", "XZIIZX", "IYXXYI")
KITAEV_SIDE = (0, 3, 4)


@dataclass(frozen=True)
class KitaevInstance:
    """Folded honeycomb on six qubits with its kernel and sign-flip conjugators."""

    n: int
    edges: Tuple[Tuple[int, int, str], ...]
    kernel: Tuple[PauliString, ...]
    conjugators: Tuple[PauliString, ...]

    def edge_term(self, a: int, b: int, letter: str) -> PauliString:
        return PauliString.on_sites(self.n, {a: letter, b: letter})

    def comb_terms(self, coupling: float = 1.0) -> TermSet:
        """H_comb: -J/4 on the labeled letter of every edge."""
        return TermSet.build(
            (
                Term(self.edge_term(a, b, letter), -coupling / 4, TermRole.PRESERVE)
                for a, b, letter in self.edges
            ),
            self.n,
        )

    def analog_terms(self, coupling: float = 1.0) -> TermSet:
        """Isotropic exchange J/4 (XX + YY + ZZ) on every edge, roles by label."""
        terms = []
        for a, b, label in self.edges:
            for letter in "XYZ":
                role = TermRole.PRESERVE if letter == label else TermRole.SUPPRESS
                terms.append(Term(self.edge_term(a, b, letter), coupling / 4, role))
        return TermSet.build(terms, self.n)


def derive_edge_labels(
    pairs: Sequence[Tuple[int, int]], kernel: Sequence[PauliString]
) -> Tuple[Tuple[int, int, str], ...]:
    """Label each edge by the unique PP that commutes with the whole kernel.

    Raises:
        ConstructionError: an edge admits zero or several letters.
    """
    n = kernel[0].n
    labeled = []
    for a, b in pairs:
        letters = [
            letter
            for letter in "XYZ"
            if all(
                symplectic_inner(w, PauliString.on_sites(n, {a: letter, b: letter})) == 0
                for w in kernel
            )
        ]
        if len(letters) != 1:
            raise ConstructionError(f"Edge ({a + 1},{b + 1}) admits letters {letters}")
        labeled.append((a, b, letters[0]))
    return tuple(labeled)


def kitaev_instance() -> KitaevInstance:
    kernel = tuple(PauliString.from_text(t) for t in KITAEV_KERNEL)
    n = kernel[0].n
    conjugators = tuple(
        PauliString.on_sites(n, {site: letter for site in KITAEV_SIDE}) for letter in "XYZ"
    )
    return KitaevInstance(n, derive_edge_labels(KITAEV_PAIRS, kernel), kernel, conjugators)


# Target selection


@dataclass(frozen=True)
class CompileResult:
    group: DDGroup
    gammas: Tuple[PauliString, ...]
    verdict: Verdict
    terms: TermSet
    construction: str


Builder = Callable[[], AdditiveCode]


def _truncated(builder: Callable[[], AdditiveCode], chi: int) -> Builder:
    return lambda: builder().restrict(list(range(chi)))


def _universal2_builders(chi: int) -> List[Tuple[str, Builder]]:
    return [
        ("additive_pg", lambda: code_forge.additive_pg_code(chi)),
        ("linear_pg", lambda: code_forge.linear_pg_code_for(chi)),
    ]


def _universal3_builders(chi: int) -> List[Tuple[str, Builder]]:
    return [("cap_set", lambda: code_forge.universal3_code(chi))]


def candidate_builders(target: Target, mode: ControlMode, chi: int) -> List[Tuple[str, Builder]]:
    """Constructions to try for a target, before sorting by sequence length."""
    bounded = mode == ControlMode.BOUNDED
    if target == Target.ZZ:
        if bounded:
            return [("rm_bounded_zz", lambda: code_forge.rm_bounded(chi, "zz"))]
        return [("rm_punctured", lambda: code_forge.rm_punctured_for(chi))]
    if target == Target.ZZZ:
        if bounded:
            return [("rm_bounded_universal", lambda: code_forge.rm_bounded(chi, "universal"))]
        return [("rm_universal", lambda: code_forge.rm_universal_for(chi))]
    if target == Target.UNIVERSAL2:
        return _universal2_builders(chi)
    if target == Target.UNIVERSAL3:
        return _universal3_builders(chi)
    if target == Target.HEISENBERG:
        if bounded:
            return _universal2_builders(chi)
        builders: List[Tuple[str, Builder]] = []
        if chi <= 3:
            builders.append(("reduced_heisenberg", _truncated(code_forge.reduced_heisenberg_code, chi)))
        if chi <= 5:
            builders.append(("pg22", _truncated(lambda: code_forge.pg22_sudoku_search().code, chi)))
        if chi <= 7:
            builders.append(
                ("pg22_exhaustive", _truncated(lambda: code_forge.pg22_sudoku_search(True).code, chi))
            )
        builders.append(
            ("heisenberg_expand", lambda: _expanded(code_forge.additive_pg_code, chi))
        )
        return builders + _universal2_builders(chi)
    if target == Target.CHIRALITY:
        if bounded:
            return _universal3_builders(chi)
        builders = []
        if chi <= 4:
            builders.append(("chirality4", _truncated(lambda: code_forge.chirality_expand().four, chi)))
        if chi == 5:
            builders.append(("chirality5", lambda: code_forge.chirality_expand().five))
        return builders + _universal3_builders(chi)
    raise InvalidInputError(f"Target {target.value} has no fixed constructions")


def target_terms(q: QuotientGraph, target: Target) -> TermSet:
    return TermSet.suppress(model_terms(q, TARGET_LOCALITY[target], TARGET_MODEL[target]), q.chi)


def _verify(group: DDGroup, gammas: Sequence[PauliString], terms: TermSet, mode: ControlMode) -> Verdict:
    if mode == ControlMode.BOUNDED:
        return check_bounded(group, gammas, terms)
    return check_terms(group, terms)


def compile_target(q: QuotientGraph, target: Target, mode: ControlMode) -> CompileResult:
    """Shortest verified construction for a fixed target on a quotient graph.

    Raises:
        CounterexampleError: no candidate passes; carries the last verdict.
    """
    terms = target_terms(q, target)
    built = []
    for name, builder in candidate_builders(target, mode, q.chi):
        try:
            built.append((name, builder()))
        except TwirlcError as exc:
            logger.info(f"Skipping {name}: {exc.detail}")
    built.sort(key=lambda item: item[1].dimension)

    last: Optional[Verdict] = None
    for name, code in built:
        group = DDGroup.from_code(code)
        verdict = _verify(group, group.generators, terms, mode)
        if verdict.ok:
            logger.info(f"{target.value}/{mode.value}: {name} with L={group.size}")
            return CompileResult(group, group.generators, verdict, terms, name)
        logger.info(f"{name} fails on {verdict.first_failure.term}")
        last = verdict
    if last is None:
        raise InfeasibleError(f"No construction available for {target.value} at chi={q.chi}")
    last.raise_for_failure()
    raise CounterexampleError(f"No construction verified for {target.value}")


def compile_selective(
    preserve: TermSet,
    suppress: TermSet,
    mode: ControlMode = ControlMode.BANG_BANG,
) -> CompileResult:
    """Smallest group preserving h_par and suppressing h_perp.

    Candidates are all nonzero kernel elements when they fit the exact cover
    limit, otherwise the kernel basis. Bounded control extends a failing
    cover with kernel basis vectors up to the whole kernel.
    """
    n = preserve.n
    kernel = selective_nullspace(preserve)
    if 2 ** len(kernel) - 1 <= settings.EXACT_COVER_LIMIT:
        candidates = kernel_elements(kernel)
    else:
        candidates = kernel
    targets = [t for t in suppress.targets() if t not in set(preserve.strings())]
    terms = TermSet.build(
        list(TermSet.suppress(targets, n).terms) + list(TermSet.preserve(preserve.strings(), n).terms),
        n,
    )
    cover = min_cover(candidates, terms)
    gammas = list(cover.generators)
    group = DDGroup.span(n, gammas, "selective")
    verdict = _verify(group, gammas, terms, mode)
    if mode == ControlMode.BOUNDED and not verdict.ok:
        for extra in kernel:
            if not group.contains(extra):
                gammas.append(extra)
                group = DDGroup.span(n, gammas, "selective")
        logger.info(f"Bounded control needs {len(gammas)} generators")
        verdict = _verify(group, gammas, terms, mode)
    return CompileResult(group, tuple(gammas), verdict, terms, "selective")
