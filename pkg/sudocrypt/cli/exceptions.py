"""
Custom exceptions for the command-line surface.
"""


class CliError(Exception):
    """Base exception for command-line errors."""

    pass


class UsageError(CliError):
    """Exception raised for invalid command-line arguments."""

    pass
