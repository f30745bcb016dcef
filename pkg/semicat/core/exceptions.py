"""Custom exceptions for the semicat library."""

from __future__ import annotations

from typing import Any, Optional


class SemicatError(Exception):
    """Base exception class for semicat errors.

    This exception is raised when a structure fails validation or when an
    operation cannot be carried out on its inputs.

    Args:
        message: The error message
        original_error: The original exception that caused this error
    """

    def __init__(self, message: str, original_error: Exception | None = None) -> None:
        super().__init__(message)
        self.original_error = original_error
        self.message = message

    def __str__(self) -> str:
        """Return a string representation of the error.

        Returns:
            A formatted error message including the original error if present.
        """
        if self.original_error:
            return f"{self.message} (Caused by: {type(self.original_error).__name__}: {self.original_error!s})"
        return self.message


# Structure axioms


class TableShapeError(SemicatError):
    """Raised when a multiplication table is not square or has entries out of range."""


class NotAssociativeError(SemicatError):
    """Raised when a table fails associativity; ``triple`` is the witness (x, y, z)."""

    def __init__(self, message: str, triple: tuple[int, int, int]) -> None:
        super().__init__(message)
        self.triple = triple


class NoIdentityError(SemicatError):
    """Raised when a group table has no two-sided identity."""


class NoInverseError(SemicatError):
    """Raised when an element of a group table has no inverse."""

    def __init__(self, message: str, element: int) -> None:
        super().__init__(message)
        self.element = element


# Limits


class SizeLimitExceededError(SemicatError):
    """Raised when an exhaustive search would exceed a configured bound."""

    def __init__(self, message: str, size: int, limit: int) -> None:
        super().__init__(message)
        self.size = size
        self.limit = limit


# Rees matrix semigroups


class NotRegularError(SemicatError):
    """Raised when a sandwich matrix has an all-zero row or column."""

    def __init__(self, message: str, kind: str, index: int) -> None:
        super().__init__(message)
        self.kind = kind
        self.index = index


class IndexCollisionError(SemicatError):
    """Raised when component index sets overlap."""

    def __init__(self, message: str, index: Any) -> None:
        super().__init__(message)
        self.index = index


class NotEnoughElementsError(SemicatError):
    """Raised when a group has too few non-identity elements for a construction."""


class ZeroEntryError(SemicatError):
    """Raised when a tuple of nonzero elements contains the zero."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(message)
        self.position = position


# Graphs and maps


class NotBijectiveError(SemicatError):
    """Raised when a map that must be a bijection is not."""


class ShapeMismatchError(SemicatError):
    """Raised when an isomorphism quadruple does not fit its source and target."""


class DomainMismatchError(SemicatError):
    """Raised when composing maps whose codomain and domain differ."""


class DegreeMismatchError(SemicatError):
    """Raised when permutations of different degrees are combined."""


class ConditionViolatedError(SemicatError):
    """Raised when a partial band assignment fails one of the four numbered extension checks."""

    def __init__(self, message: str, condition: int) -> None:
        super().__init__(message)
        self.condition = condition


# Strong semilattices


class ConnectorNotFunctorialError(SemicatError):
    """Raised when connecting maps do not compose along alpha >= beta >= gamma."""

    def __init__(self, message: str, alpha: int, beta: int, gamma: int) -> None:
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma


class ConnectorNotHomomorphismError(SemicatError):
    """Raised when a connecting map is not a homomorphism."""

    def __init__(self, message: str, alpha: int, beta: int) -> None:
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta


class ConnectorNotBijectiveError(SemicatError):
    """Raised when an operation needs bijective connecting maps."""


class NotIdempotentError(SemicatError):
    """Raised when a chosen element of a component is not idempotent."""

    def __init__(self, message: str, alpha: int, element: int) -> None:
        super().__init__(message)
        self.alpha = alpha
        self.element = element


class DiagramFailsError(SemicatError):
    """Raised when the square [alpha, beta; alpha pi, beta pi] does not commute."""

    def __init__(self, message: str, alpha: int, beta: int, element: int) -> None:
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta
        self.element = element


class PreconditionFailsError(SemicatError):
    """Raised when the data handed to a lifting construction does not meet its hypotheses."""


class NotAutomorphismError(SemicatError):
    """Raised when a supplied map is not an automorphism or isomorphism."""


# Files and commands


class ParseError(SemicatError):
    """Raised when a structure file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, original_error: Exception | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, original_error)
        self.line = line


class ValidationError(SemicatError):
    """Raised when a parsed structure violates the invariants of its module."""


class UnknownCommandError(SemicatError):
    """Raised when the command line names no known subcommand or suite."""


class ConsistencyError(SemicatError):
    """Raised when a structured search and its brute-force oracle disagree."""
