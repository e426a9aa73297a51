"""
Binary netpbm codec: P5 (grayscale) and P6 (RGB), 8-bit maxval 255.
"""

from pathlib import Path

from sudocrypt.utils.logger import log

from .exceptions import MediaFormatError, UnsupportedFormatError
from .models import Image
from .utils import PathLike, handle_media_errors

_CHANNELS_BY_MAGIC = {b"P5": 1, b"P6": 3}
_MAGIC_BY_CHANNELS = {1: b"P5", 3: b"P6"}
_WHITESPACE = b" \t\n\r\v\f"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Skip whitespace and '#' comments, then return the next token."""
    while pos < len(data):
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos] == ord("#"):
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < len(data) and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
        pos += 1
    if start == pos:
        raise MediaFormatError("netpbm header truncated")
    return data[start:pos], pos


@handle_media_errors
def read_image(data: bytes) -> Image:
    magic = data[:2]
    if magic not in _CHANNELS_BY_MAGIC:
        raise MediaFormatError(f"Not a binary PGM/PPM file (magic {magic!r})")
    channels = _CHANNELS_BY_MAGIC[magic]

    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        token, pos = _next_token(data, pos)
        if not token.isdigit():
            raise MediaFormatError(f"netpbm {name} is not a decimal integer: {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise MediaFormatError(f"Only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise MediaFormatError(f"netpbm dimensions must be positive, got {width}x{height}")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise MediaFormatError("netpbm header must end with one whitespace byte")
    pos += 1

    expected = width * height * channels
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise MediaFormatError(
            f"netpbm payload truncated: expected {expected} bytes, got {len(payload)}"
        )
    if len(data) > pos + expected:
        log.debug(f"Ignoring {len(data) - pos - expected} bytes after netpbm payload")
    return Image.from_samples(width, height, channels, payload)


def write_image(img: Image) -> bytes:
    if img.channels not in _MAGIC_BY_CHANNELS:
        raise UnsupportedFormatError(
            f"netpbm holds 1 or 3 channels, image has {img.channels}"
        )
    header = b"%s\n%d %d\n255\n" % (_MAGIC_BY_CHANNELS[img.channels], img.width, img.height)
    return header + img.samples


def load_image(path: PathLike) -> Image:
    return read_image(Path(path).read_bytes())


def save_image(path: PathLike, img: Image) -> None:
    Path(path).write_bytes(write_image(img))
