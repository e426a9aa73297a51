"""
Custom exceptions for media containers.
"""


class MediaError(Exception):
    """Base exception for media container errors."""

    pass


class MediaFormatError(MediaError, ValueError):
    """Exception raised when a container is malformed or inconsistent."""

    pass


class UnsupportedFormatError(MediaError):
    """Exception raised for well-formed containers this package does not handle."""

    pass
