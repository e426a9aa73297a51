"""
Custom exceptions for key material and Sudoku grids.
"""

from typing import Optional


class SudokuKeyError(Exception):
    """Base exception for key related errors."""

    pass


class InvalidArgumentError(SudokuKeyError, ValueError):
    """Exception raised when an argument is outside the accepted domain."""

    pass


class InvalidKeyError(SudokuKeyError):
    """Exception raised when a grid cannot serve as a cipher key."""

    pass


class KeyParseError(SudokuKeyError):
    """Exception raised when a key file is syntactically malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TamperedKeyError(SudokuKeyError):
    """Exception raised when key material violates its invariants."""

    pass


class KeyMismatchError(SudokuKeyError):
    """Exception raised when a key does not fit the media it is applied to."""

    pass
