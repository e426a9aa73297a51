"""
Media package: bit-exact netpbm, PCM WAV and frame-directory video containers.
"""

from .exceptions import MediaError, MediaFormatError, UnsupportedFormatError
from .models import AudioClip, Image, VideoSequence
from .netpbm import load_image, read_image, save_image, write_image
from .utils import detect_media, handle_media_errors
from .video import read_video, write_video
from .wav import load_wav, read_wav, save_wav, write_wav

__all__ = [
    # Models
    "Image",
    "AudioClip",
    "VideoSequence",
    # Codecs
    "read_image",
    "write_image",
    "load_image",
    "save_image",
    "read_wav",
    "write_wav",
    "load_wav",
    "save_wav",
    "read_video",
    "write_video",
    # Utility functions
    "detect_media",
    "handle_media_errors",
    # Exceptions
    "MediaError",
    "MediaFormatError",
    "UnsupportedFormatError",
]
