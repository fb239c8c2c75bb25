"""Compiler exceptions and process exit codes."""

from typing import Any, Optional

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class TwirlcError(Exception):
    """Base error carrying a process exit code and a human-readable detail."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class InvalidInputError(TwirlcError, ValueError):
    """Malformed Pauli text, mismatched lengths, invalid colorings and the like."""

    exit_code = EXIT_IO


class StorageError(TwirlcError):
    """A file could not be read, parsed or written."""

    exit_code = EXIT_IO


class CounterexampleError(TwirlcError):
    """Verification found a term the group fails to handle."""

    exit_code = EXIT_COUNTEREXAMPLE

    def __init__(self, detail: str, term: Any = None, verdict: Any = None):
        super().__init__(detail)
        self.term = term
        self.verdict = verdict


class ConstructionError(CounterexampleError):
    """A named construction failed its own verification."""


class InfeasibleError(TwirlcError):
    """Synthesis cannot succeed, e.g. a term commutes with every candidate."""

    exit_code = EXIT_INFEASIBLE

    def __init__(self, detail: str, term: Any = None):
        super().__init__(detail)
        self.term = term


class CodeTooLargeError(InfeasibleError):
    """Exhaustive enumeration was requested beyond the configured bound."""


class UnsupportedChiError(InfeasibleError):
    """A scaling family has no tabulated value at the requested color count."""
