"""
Command-line interface: keygen, encrypt, decrypt, analyze and bench.
"""

from .main import build_parser, main

__all__ = [
    "build_parser",
    "main",
]
