"""Shared exception types."""

from __future__ import annotations


class UndefinedOperation(Exception):
    """A stack operation is not defined on the given stack."""


class OrderMismatch(ValueError):
    """Stack order and automaton/operation order disagree."""


class MalformedCertificate(ValueError):
    """A run certificate is structurally unusable: an out-of-range position or
    order, a state outside the declared order's state set, or a state left
    unjustified after its conditions consulted an entry the certificate does
    not contain."""


class NotAccepted(ValueError):
    """Raised when a run certificate is requested for a rejected stack."""


class ResourceLimitExceeded(RuntimeError):
    """A configured budget (enumeration count, visited-set size, grid size)
    was exhausted before the search finished."""


class DimensionMismatch(ValueError):
    """A tiling solution's cell count does not match the requested grid."""


class MalformedWitness(ValueError):
    """A stack does not match the witness layout; the message names the first
    structural deviation."""


class ParseError(ValueError):
    """Text input could not be parsed.  Carries 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
