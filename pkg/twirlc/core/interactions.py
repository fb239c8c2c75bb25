"""Interaction models, compile targets and their letter-tuple tables."""

from enum import Enum
from itertools import permutations, product
from typing import Dict, FrozenSet, Optional, Sequence, Set, Tuple

from twirlc.core.errors import InvalidInputError

LETTERS = ("X", "Y", "Z")
LetterTuple = Tuple[str, ...]


class InteractionModel(str, Enum):
    ALL = "all"
    Z = "Z"
    HEISENBERG = "heisenberg"
    CHIRALITY = "chirality"
    CUSTOM = "custom"


class Target(str, Enum):
    UNIVERSAL2 = "universal2"
    UNIVERSAL3 = "universal3"
    ZZ = "zz"
    ZZZ = "zzz"
    HEISENBERG = "heisenberg"
    CHIRALITY = "chirality"
    SELECTIVE = "selective"


class ControlMode(str, Enum):
    BANG_BANG = "bb"
    BOUNDED = "bounded"


# Hyperedge sizes a model is defined on; None means any size.
MODEL_ARITY: Dict[InteractionModel, Optional[Set[int]]] = {
    InteractionModel.ALL: None,
    InteractionModel.Z: None,
    InteractionModel.HEISENBERG: {2},
    InteractionModel.CHIRALITY: {3},
    InteractionModel.CUSTOM: None,
}

TARGET_LOCALITY: Dict[Target, int] = {
    Target.UNIVERSAL2: 2,
    Target.UNIVERSAL3: 3,
    Target.ZZ: 2,
    Target.ZZZ: 3,
    Target.HEISENBERG: 2,
    Target.CHIRALITY: 3,
    Target.SELECTIVE: 2,
}

# Model the verdict is checked against; None keeps the device's own alphabets.
TARGET_MODEL: Dict[Target, Optional[InteractionModel]] = {
    Target.UNIVERSAL2: None,
    Target.UNIVERSAL3: None,
    Target.ZZ: InteractionModel.Z,
    Target.ZZZ: InteractionModel.Z,
    Target.HEISENBERG: InteractionModel.HEISENBERG,
    Target.CHIRALITY: None,
    Target.SELECTIVE: None,
}

# Tailored families only hold for instantaneous pulses.
BANG_BANG_ONLY: Set[Target] = {Target.HEISENBERG, Target.CHIRALITY}


def _without_identity(tuples) -> FrozenSet[LetterTuple]:
    return frozenset(t for t in tuples if any(letter != "I" for letter in t))


def model_tuples(
    model: InteractionModel,
    arity: int,
    alphabet: Optional[Sequence[Sequence[str]]] = None,
) -> FrozenSet[LetterTuple]:
    """Local letter tuples a model allows on a hyperedge of the given size.

    Args:
        model: Interaction model of the hyperedge.
        arity: Number of sites in the hyperedge.
        alphabet: Per-site letters, required for the custom model.

    Returns:
        Frozen set of letter tuples aligned with the hyperedge's sorted sites.
        The all-identity tuple is never included.
    """
    allowed = MODEL_ARITY[model]
    if allowed is not None and arity not in allowed:
        return frozenset()
    if model == InteractionModel.ALL:
        return _without_identity(product("IXYZ", repeat=arity))
    if model == InteractionModel.Z:
        return _without_identity(product("IZ", repeat=arity))
    if model == InteractionModel.HEISENBERG:
        return frozenset((p, p) for p in LETTERS)
    if model == InteractionModel.CHIRALITY:
        return frozenset(permutations(LETTERS))
    if alphabet is None or len(alphabet) != arity:
        raise InvalidInputError("custom model needs one alphabet per site")
    return _without_identity(product(*[sorted(set(a)) for a in alphabet]))


def full_weight_tuples(model: InteractionModel, arity: int) -> FrozenSet[LetterTuple]:
    """Tuples of a model that act non-trivially on every site."""
    return frozenset(
        t for t in model_tuples(model, arity) if all(letter != "I" for letter in t)
    )


def is_supported_model(name: str) -> bool:
    """Check if a model name is known."""
    try:
        InteractionModel(name)
    except ValueError:
        return False
    return True


def default_onsite() -> FrozenSet[str]:
    return frozenset(LETTERS)
