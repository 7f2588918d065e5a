"""Custom exceptions for the certification pipeline."""

from __future__ import annotations

from typing import Any


class VissError(Exception):
    """Base exception for system errors."""


class UsageError(VissError):
    """Invalid argument: bad index, dimension mismatch, non-finite input."""


class ParseError(UsageError):
    """Syntax error in a system or start file."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InconclusiveError(VissError):
    """Rigorous computation could not proceed (zero divisor, singular LU, overflow)."""


class SelectionError(VissError):
    """No admissible column/row selection inside the forced superset."""


class DeflationLimitError(VissError):
    """Deflation cap reached while the augmented system was still singular."""

    def __init__(self, message: str, coranks: list[int] | None = None) -> None:
        super().__init__(message)
        self.coranks = list(coranks or [])
        self.last_corank = self.coranks[-1] if self.coranks else None


class VerificationFailedError(VissError):
    """Krawczyk test stayed inconclusive; carries the run diagnostics."""

    def __init__(self, message: str, result: Any = None) -> None:
        super().__init__(message)
        self.result = result
