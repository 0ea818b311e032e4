"""
Error types for quiverar.

This module defines the exception hierarchy shared by all components, so that
the command line can map failures onto exit codes.
"""

from typing import Any, Optional


class QuiverarError(Exception):
    """Base exception for quiverar errors."""
    pass


class InputError(QuiverarError):
    """Exception raised for malformed user input."""
    pass


class WorkspaceSyntaxError(InputError):
    """Exception raised for syntax errors in workspace files."""

    def __init__(self, message: str, line: int, column: int):
        """Initialize the syntax error.

        Args:
            message: Description of the problem.
            line: 1-based line number.
            column: 1-based column number.
        """
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ShapeError(QuiverarError):
    """Exception raised for matrix shape mismatches."""
    pass


class UndecidedError(QuiverarError):
    """Exception raised when an answer is not decidable within the configured caps."""

    def __init__(self, message: str, bound: Optional[int] = None):
        super().__init__(message if bound is None else f"{message} (bound {bound})")
        self.bound = bound


class NotSemiperfectError(QuiverarError):
    """Exception raised when an operation needs a locally semiperfect algebra."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class CertificateError(QuiverarError):
    """Exception raised when an input lacks a required certificate."""
    pass


class ConsistencyError(QuiverarError):
    """Exception raised when an identity that must hold is violated."""
    pass
