"""
Custom exceptions for the cipher pipelines.
"""


class CipherError(Exception):
    """Base exception for cipher stage errors."""

    pass


class PreconditionError(CipherError, ValueError):
    """Exception raised when a stage receives input it cannot transform."""

    pass
