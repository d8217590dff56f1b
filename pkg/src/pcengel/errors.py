"""Exception hierarchy and the small verdict record shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class PcEngelError(Exception):
    """Base class for all errors raised by the package."""


class InputError(PcEngelError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class HypothesisError(InputError):
    """A precondition of the requested construction does not hold."""


class InvalidAutomorphismError(InputError):
    def __init__(self, message: str, relation: str | None = None):
        self.relation = relation
        super().__init__(message)


class NonBijectiveError(InvalidAutomorphismError):
    pass


class CapacityError(PcEngelError):
    """The computation would exceed a configured enumeration bound (exit code 3)."""


@dataclass
class Verdict:
    """Outcome of a check: truthy iff the property holds.

    ``witness`` carries whatever certifies a failure (an element, a triple, a pair
    of indices); ``hypothesis_met`` is False when the check ran outside the
    hypotheses it is meant for and its outcome is informational only.
    """

    ok: bool
    witness: Any = None
    hypothesis_met: bool = True
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok
