"""Error taxonomy shared by every module.

Each error carries the CLI exit code it maps to:
0 success, 2 exceptional/unsupported input, 3 infeasible/budget,
4 internal audit failure.
"""

from __future__ import annotations

from typing import Any


class ListDistError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", **details: Any) -> None:
        super().__init__(message)
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"error": self.kind, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


# input / parsing

class InputError(ListDistError):
    exit_code = 2


class MalformedLine(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class LoopEdge(InputError):
    pass


class InvalidGraph6(InputError):
    pass


class UncolouredIncidentEdge(InputError):
    pass


# exceptional / unsupported graphs

class UnsupportedInput(ListDistError):
    exit_code = 2


class Disconnected(UnsupportedInput):
    pass


class NotConnected(UnsupportedInput):
    pass


class Unsupported(UnsupportedInput):
    pass


class ExceptionalGraph(UnsupportedInput):
    pass


class ExceptionalTree(UnsupportedInput):
    pass


class NotATree(UnsupportedInput):
    pass


class ListTooShort(UnsupportedInput):
    pass


class NotApplicable(UnsupportedInput):
    pass


class TooLarge(UnsupportedInput):
    pass


# infeasible / budget

class SearchLimit(ListDistError):
    exit_code = 3


class BudgetExceeded(SearchLimit):
    pass


class NotFoundWithin(SearchLimit):
    pass


class Infeasible(SearchLimit):
    pass


class OverConstrained(SearchLimit):
    pass


# internal contract violations

class InternalError(ListDistError):
    exit_code = 4


class InternalAudit(InternalError):
    pass


class SchemeStuck(InternalError):
    pass


class ExtensionStuck(InternalError):
    pass


class InvariantViolation(InternalError):
    pass
