"""
Exception hierarchy for the feasibility engine.
The CLI maps each family onto an exit code (see constants).
"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceSpan:
    """Location in a source text: 1-based line, 1-based [col_start, col_end)."""
    line: int
    col_start: int
    col_end: int

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col_start}-{self.col_end}"


class AlpFeasibilityError(Exception):
    """Base class for every error raised by this package."""


class NumericDomainError(AlpFeasibilityError, ZeroDivisionError):
    """Division by zero or evaluation at a pole."""


class ParseError(AlpFeasibilityError, ValueError):
    """Syntax error in a .lsys/.alp text, carrying the offending span."""

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        self.message = message
        self.span = span
        where = f"{span}: " if span is not None else ""
        super().__init__(f"{where}{message}")


class ValidationError(AlpFeasibilityError, ValueError):
    """Structurally invalid system or request (unknown/duplicate variables, ...)."""


class GadgetError(AlpFeasibilityError):
    """Gadget constructors called outside their domain."""


class SolverLimitError(AlpFeasibilityError):
    """The simplex exceeded its pivot bound. Reported as an internal error, never a verdict."""


class WitnessError(AlpFeasibilityError):
    """A witness could not be concretized or failed verification."""


class OracleCapError(AlpFeasibilityError):
    """The oracle refuses systems with more != rows than its cap."""
