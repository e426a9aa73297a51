#!/usr/bin/env python3
"""
SudoCrypt - Main CLI Entry Point

Sudoku-keyed encryption and analysis for images, WAV audio and frame-directory video.
"""

import sys
from pathlib import Path

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from sudocrypt.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
