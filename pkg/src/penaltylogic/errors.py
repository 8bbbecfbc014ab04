"""Exception types raised by the engine."""

from __future__ import annotations


class PenaltyLogicError(Exception):
    """Base class for all engine errors."""


class FormulaSyntaxError(PenaltyLogicError, ValueError):
    """Raised when formula or knowledge-base text cannot be parsed.

    Attributes:
        line: 1-based line of the offending token.
        column: 1-based column of the offending token.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class VocabularyError(PenaltyLogicError, KeyError):
    """An atom is needed that the interpretation or assignment does not cover."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "vocabulary mismatch"


class CapExceededError(PenaltyLogicError):
    """A desk-scale resource cap (variables, items, vertices) was exceeded."""
