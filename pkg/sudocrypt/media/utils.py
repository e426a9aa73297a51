"""
Shared helpers for the media containers: error translation and file access.
"""

import struct
from functools import wraps
from pathlib import Path
from typing import Optional, Union

from sudocrypt.utils.logger import log

from .exceptions import MediaError, MediaFormatError

PathLike = Union[str, Path]

IMAGE_SUFFIXES = {".pgm", ".ppm", ".pnm"}
AUDIO_SUFFIXES = {".wav", ".wave"}


def handle_media_errors(func):
    """Decorator translating low-level decode failures into MediaFormatError."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except MediaError:
            # Re-raise our custom exceptions without wrapping
            raise
        except (struct.error, ValueError, IndexError, UnicodeDecodeError) as e:
            log.error(f"Error in {func.__name__}: {e}")
            raise MediaFormatError(f"{func.__name__} failed: {e}") from e

    return wrapper


def detect_media(path: PathLike) -> Optional[str]:
    """Return "image", "audio" or "video" from a path, or None if unknown."""
    path = Path(path)
    if path.is_dir():
        return "video"
    suffix = path.suffix.lower()
    if suffix in IMAGE_SUFFIXES:
        return "image"
    if suffix in AUDIO_SUFFIXES:
        return "audio"
    return None
