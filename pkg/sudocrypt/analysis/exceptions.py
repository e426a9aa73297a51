"""
Custom exceptions for metric analysis.
"""


class AnalysisError(Exception):
    """Base exception for analysis errors."""

    pass


class DimensionError(AnalysisError, ValueError):
    """Exception raised when compared signals do not have compatible shapes."""

    pass
