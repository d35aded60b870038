"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HalfFlatError(Exception):
    """Base class for all library errors."""


class DegreeError(HalfFlatError):
    """Operation applied to forms of an unsupported or mismatched degree."""


class RadicandMismatchError(HalfFlatError):
    """Arithmetic between quadratic-extension elements over different radicands."""


class NotStableError(HalfFlatError):
    """A stable form was required but the input is degenerate."""


class NotCompatibleError(HalfFlatError):
    """A compatible pair was required but omega ^ rho != 0."""


class JacobiError(HalfFlatError):
    """Structure constants violate the Jacobi identity (d^2 != 0)."""


class CatalogError(HalfFlatError):
    """Unknown catalog name or parameter outside its admissible range."""


class DomainError(HalfFlatError):
    """Ansatz parameter outside the domain of the chosen construction case."""


class ParseError(HalfFlatError):
    """Syntax error in the structure-file format, with position information."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
