"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CausalBoundsError(Exception):
    """Base class for all errors raised by this package."""


class InputSyntaxError(CausalBoundsError):
    """A text input (graph spec, query, constraints) failed to parse.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" at line {line}"
            if column is not None:
                loc += f", column {column}"
        super().__init__(message + loc)


class ValidationFailure(CausalBoundsError):
    """A graph or query violates the restrictions of the method.

    Wraps the structured report so callers can render individual violations.
    """

    def __init__(self, report):
        self.report = report
        lines = "; ".join(f"{v.code}: {v.message}" for v in report.violations)
        super().__init__(lines or "validation failed")


class InfeasibleConstraintsError(CausalBoundsError):
    """User constraints left some variable with no admissible response function."""


class UnsupportedConstraintError(CausalBoundsError):
    """A constraint is not decidable per response-function index."""


class EvaluationError(CausalBoundsError):
    """Numeric bound evaluation got missing or out-of-range parameter values."""


class GeometryError(CausalBoundsError):
    """Internal error in the exact-rational polyhedral computation."""
