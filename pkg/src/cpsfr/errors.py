"""Exception hierarchy shared across the package.

Every error carries a stable machine-readable ``code`` so that callers
(CLI, HTTP service, tests) can dispatch on it without string-matching
human-readable messages.
"""

from __future__ import annotations


class CpsfError(Exception):
    """Base class for all package errors."""

    code = "Error"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return self.args[0] if self.args else ""


class UnknownConcernError(CpsfError):
    code = "UnknownConcern"


class AmbiguousConcernError(CpsfError):
    code = "AmbiguousConcern"


class UnknownAtomError(CpsfError):
    code = "UnknownAtom"


class UnknownActionError(CpsfError):
    code = "UnknownAction"


class UnknownGoalError(CpsfError):
    code = "UnknownGoal"


class QuerySyntaxError(CpsfError):
    code = "QuerySyntax"


class InconsistentCandidateError(CpsfError):
    code = "InconsistentCandidate"


class TooLargeForOracleError(CpsfError):
    code = "TooLargeForOracle"


class ResourceBudgetExceededError(CpsfError):
    code = "ResourceBudgetExceeded"


class HorizonTooSmallError(CpsfError):
    code = "HorizonTooSmall"


class InconsistentSpecError(CpsfError):
    """The encoded observations and statements admit no model at all."""

    code = "Inconsistent"
