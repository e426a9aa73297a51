"""SudoCrypt: Sudoku-keyed encryption for images, audio and video."""

__version__ = "0.1.0"
