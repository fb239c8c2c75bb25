"""
Dense Numerical Oracle Module.

Exact matrix checks at desk scale (at most ``settings.MAX_DENSE_QUBITS``
qubits): Pauli matrices, group twirls, Pauli-basis decomposition,
stroboscopic cycle error scaling and the Kitaev engineering identities.
Site 1 of a Pauli string is the most significant tensor factor.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import expm, hadamard

from twirlc.config import settings
from twirlc.core.dd_compiler import DDGroup, Term, TermSet, kitaev_instance
from twirlc.core.device_graph import QuotientGraph, model_terms
from twirlc.core.errors import InvalidInputError
from twirlc.core.field_pauli import PauliString
from twirlc.core.interactions import ControlMode, InteractionModel
from twirlc.core.sequencer import kitaev_cycle
from twirlc.models import SimReportSchema

logger = logging.getLogger(__name__)

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _check_size(n: int) -> None:
    if n > settings.MAX_DENSE_QUBITS:
        raise InvalidInputError(
            f"{n} qubits exceed the dense limit of {settings.MAX_DENSE_QUBITS}"
        )


def pauli_matrix(p: PauliString) -> np.ndarray:
    _check_size(p.n)
    if p.n == 0:
        return np.eye(1, dtype=complex)
    return reduce(np.kron, [_SINGLE[p.letter(i)] for i in range(p.n)])


def build_hamiltonian(ts: TermSet) -> np.ndarray:
    """Sum of coefficient times Pauli matrix over the terms."""
    _check_size(ts.n)
    h = np.zeros((2**ts.n, 2**ts.n), dtype=complex)
    for term in ts:
        h += term.coefficient * pauli_matrix(term.pauli)
    return h


def _check_operator(h: np.ndarray, n: int) -> None:
    if h.shape != (2**n, 2**n):
        raise InvalidInputError(f"Operator of shape {h.shape} does not act on {n} qubits")


def conjugate(p: PauliString, h: np.ndarray) -> np.ndarray:
    u = pauli_matrix(p)
    return u.conj().T @ h @ u


def first_order_twirl(g: DDGroup, h: np.ndarray) -> np.ndarray:
    """(1/|G|) sum over group elements of U^dagger H U."""
    _check_size(g.n)
    _check_operator(h, g.n)
    total = np.zeros_like(h, dtype=complex)
    for element in g.elements():
        total += conjugate(element, h)
    return total / g.size


def _mask(word: int, n: int) -> int:
    # site i sits at matrix-index bit n-1-i
    return sum(((word >> i) & 1) << (n - 1 - i) for i in range(n))


def pauli_decompose(m: np.ndarray, tolerance: Optional[float] = None) -> Dict[PauliString, complex]:
    """Coefficients c_P = Tr(P M) / 2^n above the tolerance.

    For each X pattern the Z patterns come out of one Walsh-Hadamard product.
    """
    tolerance = settings.TOLERANCE if tolerance is None else tolerance
    dim = m.shape[0]
    n = dim.bit_length() - 1
    _check_operator(m, n)
    index = np.arange(dim)
    signs = hadamard(dim) if dim > 1 else np.ones((1, 1))
    words = {_mask(w, n): w for w in range(dim)}
    coefficients: Dict[PauliString, complex] = {}
    for xm in range(dim):
        traces = signs @ m[index, index ^ xm]
        for zm in range(dim):
            phase = 1j ** bin(xm & zm).count("1")
            value = phase * traces[zm] / dim
            if abs(value) > tolerance:
                coefficients[PauliString(n, words[xm], words[zm])] = value
    return coefficients


def reconstruct(coefficients: Dict[PauliString, complex], n: int) -> np.ndarray:
    total = np.zeros((2**n, 2**n), dtype=complex)
    for p, c in coefficients.items():
        total += c * pauli_matrix(p)
    return total


def random_local_hamiltonian(
    q: QuotientGraph,
    k: int,
    model: Optional[InteractionModel] = None,
    seed: int = 0,
    normalize: bool = True,
) -> TermSet:
    """Gaussian coefficients on every model term; unit l1 norm when normalized."""
    rng = np.random.default_rng(seed)
    strings = model_terms(q, k, model)
    values = rng.normal(size=len(strings))
    if normalize and len(strings):
        values = values / np.abs(values).sum()
    return TermSet.build((Term(s, float(v)) for s, v in zip(strings, values)), q.chi)


def cycle_unitary(frames: Sequence[PauliString], h: np.ndarray, delta: float) -> np.ndarray:
    """Time-ordered product of U_f^dagger exp(-i H delta) U_f, first frame rightmost."""
    step = expm(-1j * delta * h)
    total = np.eye(h.shape[0], dtype=complex)
    for frame in frames:
        u = pauli_matrix(frame)
        total = u.conj().T @ step @ u @ total
    return total


def frame_average(frames: Sequence[PauliString], h: np.ndarray) -> np.ndarray:
    total = np.zeros_like(h, dtype=complex)
    for frame in frames:
        total += conjugate(frame, h)
    return total / len(frames)


def schedule_average(schedule, h: np.ndarray) -> np.ndarray:
    """First-order average Hamiltonian over the schedule's slots."""
    frames = schedule.device_frames()
    _check_operator(h, frames[0].n)
    return frame_average(frames, h)


@dataclass
class SimReport:
    name: str
    deltas: List[float] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)
    slope: Optional[float] = None
    residuals: Dict[str, float] = field(default_factory=dict)
    coefficients: Dict[str, float] = field(default_factory=dict)
    ok: bool = True

    def to_schema(self) -> SimReportSchema:
        return SimReportSchema(
            name=self.name,
            ok=self.ok,
            deltas=self.deltas,
            errors=self.errors,
            slope=self.slope,
            residuals=self.residuals,
            coefficients=self.coefficients,
        )


def _coefficient_table(m: np.ndarray) -> Dict[str, float]:
    return {p.to_text(): float(np.real(c)) for p, c in sorted(pauli_decompose(m).items())}


def stroboscopic_error(schedule, h: np.ndarray, deltas: Sequence[float]) -> SimReport:
    """Cycle error against exp(-i T_c H_avg) and its log-log slope in delta.

    The slope is fitted over the points with a nonzero error and stays None
    when fewer than two remain (for example a zero Hamiltonian).

    Raises:
        InvalidInputError: bounded schedules carry no frames to conjugate by.
    """
    if schedule.mode != ControlMode.BANG_BANG:
        raise InvalidInputError("Stroboscopic simulation needs a bang-bang schedule")
    frames = schedule.device_frames()
    _check_size(frames[0].n)
    _check_operator(h, frames[0].n)
    average = frame_average(frames, h)
    errors = []
    for delta in deltas:
        exact = cycle_unitary(frames, h, delta)
        target = expm(-1j * len(frames) * delta * average)
        errors.append(float(np.linalg.norm(exact - target, 2)))
    fit = [(np.log(d), np.log(e)) for d, e in zip(deltas, errors) if e > settings.TOLERANCE]
    slope = None
    if len(fit) >= 2:
        xs, ys = zip(*fit)
        slope = float(np.polyfit(xs, ys, 1)[0])
    ok = slope is None or settings.SLOPE_MIN <= slope <= settings.SLOPE_MAX
    logger.info(f"Stroboscopic slope for {schedule.name}: {slope}")
    return SimReport(
        name=schedule.name,
        deltas=[float(d) for d in deltas],
        errors=errors,
        slope=slope,
        coefficients=_coefficient_table(average),
        ok=ok,
    )


def kitaev_verify(coupling: float = 1.0) -> SimReport:
    """Check the folded Kitaev engineering identities numerically.

    Residuals: ``twirl`` is <W1, W2> applied to H_analog against -H_comb,
    ``sign_flip`` the conjugator sum against +H_comb, ``cycle`` the 12-slot
    cycle average against H_comb / 3, and ``with_identity`` the average
    including the identity conjugator against zero.
    """
    instance = kitaev_instance()
    h_analog = build_hamiltonian(instance.analog_terms(coupling))
    h_comb = build_hamiltonian(instance.comb_terms(coupling))
    base = DDGroup(instance.n, instance.kernel[:2], "kitaev")
    twirled = first_order_twirl(base, h_analog)
    flipped = sum(conjugate(c, twirled) for c in instance.conjugators)
    cycle_average = schedule_average(kitaev_cycle(), h_analog)
    with_identity = (twirled + flipped) / 4

    residuals = {
        "twirl": float(np.linalg.norm(twirled + h_comb)),
        "sign_flip": float(np.linalg.norm(flipped - h_comb)),
        "cycle": float(np.linalg.norm(cycle_average - h_comb / 3)),
        "with_identity": float(np.linalg.norm(with_identity)),
    }
    ok = all(value < settings.TWIRL_TOLERANCE for value in residuals.values())
    if not ok:
        logger.warning(f"Kitaev identities fail: {residuals}")
    return SimReport(
        name="kitaev",
        residuals=residuals,
        coefficients=_coefficient_table(cycle_average),
        ok=ok,
    )
