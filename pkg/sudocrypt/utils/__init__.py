"""
Utils package for SudoCrypt.

Holds the shared loguru logger used by every other subpackage.
"""

from .logger import Loggers, get_logger, log

__all__ = [
    "Loggers",
    "get_logger",
    "log",
]
