"""Exception hierarchy shared by the library, the CLI and the API."""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .report import Report


class CosymplecticLabError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(CosymplecticLabError):
    """Malformed input file or schema violation."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        self.field = field
        self.line = line
        self.column = column
        location = []
        if line is not None:
            location.append(f"line {line}")
            if column is not None:
                location.append(f"column {column}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(prefix + message)


class DimensionMismatchError(CosymplecticLabError, ValueError):
    """Vectors or matrices handed to an operation have the wrong size."""


class InconsistentSystemError(CosymplecticLabError):
    """The right-hand side of a linear system is outside the column space."""


class SingularMatrixError(CosymplecticLabError):
    """A matrix that must be invertible is singular."""


class PreconditionError(CosymplecticLabError):
    """An operation was called on data that fails its precondition."""

    def __init__(self, message: str, report: Optional["Report"] = None):
        self.report = report
        super().__init__(message)


class InvariantBreach(CosymplecticLabError):
    """An identity that must hold by construction failed."""


class UnknownEntryError(CosymplecticLabError, KeyError):
    """A catalogue name or its arguments do not match a built-in entry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
