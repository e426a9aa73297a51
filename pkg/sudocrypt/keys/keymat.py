"""
Key material: everything needed to decrypt, bound to a session timestamp.

Key file layout (ASCII, LF line endings, fixed order)::

    SUDOCRYPT-KEY v1
    timestamp <u64>
    media <image|audio-shuffle|audio-xor|video>
    threshold <1..255>
    shuffle_seed <u64>
    perm_row <idx>
    iterations <k>
    dims <w> <h> <channels>                       (image)
    samples <len> <channels> <rate>               (audio-shuffle, audio-xor)
    frames <count> <fps_num> <fps_den> <w> <h> <channels>   (video)
    sudoku n=<N>
    <N rows of N space-separated integers, 0 for empty>

An all-zero shape line means the plaintext shape has not been bound yet.
"""

import os
import tempfile
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple, Union

from sudocrypt.utils.logger import log

from .exceptions import (
    InvalidArgumentError,
    KeyMismatchError,
    KeyParseError,
    TamperedKeyError,
)
from .prng import MASK64, mix_seed
from .sudoku import SudokuGrid, box_size, format_grid, generate, parse_grid, solve, validate

KEY_MAGIC = "SUDOCRYPT-KEY v1"
THRESHOLD_MODULUS = 254
MIN_GRID_SIZE = 4


class MediaKind(str, Enum):
    IMAGE = "image"
    AUDIO_SHUFFLE = "audio-shuffle"
    AUDIO_XOR = "audio-xor"
    VIDEO = "video"

    @property
    def is_audio(self) -> bool:
        return self in (MediaKind.AUDIO_SHUFFLE, MediaKind.AUDIO_XOR)


_SHAPE_KEYWORDS = {
    MediaKind.IMAGE: "dims",
    MediaKind.AUDIO_SHUFFLE: "samples",
    MediaKind.AUDIO_XOR: "samples",
    MediaKind.VIDEO: "frames",
}


@dataclass(frozen=True)
class KeyMaterial:
    """Complete decryption bundle. ``grid`` is always solved; ``puzzle`` keeps
    the unsolved form when the key travels as a puzzle."""

    timestamp: int
    grid: SudokuGrid
    threshold: int
    shuffle_seed: int
    perm_row: int
    iterations: int = 1
    media: MediaKind = MediaKind.IMAGE
    original_width: int = 0
    original_height: int = 0
    original_length: int = 0
    channels: int = 0
    sample_rate: int = 0
    frame_count: int = 0
    fps_numerator: int = 0
    fps_denominator: int = 0
    puzzle: Optional[SudokuGrid] = None

    def __post_init__(self):
        object.__setattr__(self, "media", MediaKind(self.media))
        check_invariants(self)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def has_shape(self) -> bool:
        return self.channels > 0

    @property
    def image_shape(self) -> Optional[Tuple[int, int, int]]:
        """(width, height, channels) of the plaintext raster, if bound."""
        if not self.has_shape or self.media.is_audio:
            return None
        return self.original_width, self.original_height, self.channels

    def with_media(self, media: MediaKind) -> "KeyMaterial":
        if media == self.media:
            return self
        if self.has_shape:
            raise KeyMismatchError(
                f"Key is bound to {self.media.value} media; cannot switch to {media.value}"
            )
        return replace(self, media=media)


def _u64(value: int, name: str) -> None:
    if not 0 <= value <= MASK64:
        raise TamperedKeyError(f"{name} outside unsigned 64-bit range: {value}")


def check_invariants(k: KeyMaterial) -> None:
    """Raise TamperedKeyError unless ``k`` satisfies every key invariant."""
    _u64(k.timestamp, "timestamp")
    _u64(k.shuffle_seed, "shuffle_seed")
    if not 1 <= k.threshold <= 255:
        raise TamperedKeyError(f"threshold {k.threshold} outside 1..255")
    if k.iterations < 1:
        raise TamperedKeyError(f"iterations must be positive, got {k.iterations}")
    if k.grid.n < MIN_GRID_SIZE:
        raise TamperedKeyError(f"Sudoku grid size {k.grid.n} below {MIN_GRID_SIZE}")
    if not validate(k.grid, strict=True):
        raise TamperedKeyError("Sudoku grid violates row/column/box constraints")
    if not 0 <= k.perm_row < k.grid.n:
        raise TamperedKeyError(f"perm_row {k.perm_row} outside 0..{k.grid.n - 1}")
    if k.puzzle is not None:
        if k.puzzle.n != k.grid.n or not validate(k.puzzle):
            raise TamperedKeyError("Sudoku puzzle violates row/column/box constraints")
        for given_row, solved_row in zip(k.puzzle.cells, k.grid.cells):
            if any(g and g != s for g, s in zip(given_row, solved_row)):
                raise TamperedKeyError("Sudoku puzzle disagrees with its solution")
    _check_shape(k)


def _check_shape(k: KeyMaterial) -> None:
    fields = {
        "original_width": k.original_width,
        "original_height": k.original_height,
        "original_length": k.original_length,
        "channels": k.channels,
        "sample_rate": k.sample_rate,
        "frame_count": k.frame_count,
        "fps_numerator": k.fps_numerator,
        "fps_denominator": k.fps_denominator,
    }
    negative = [name for name, value in fields.items() if value < 0]
    if negative:
        raise TamperedKeyError(f"Negative shape fields: {', '.join(negative)}")
    if not k.has_shape:
        if any(fields.values()):
            raise TamperedKeyError("Shape fields set without a channel count")
        return

    if k.channels > 4:
        raise TamperedKeyError(f"channels {k.channels} outside 1..4")
    if k.media.is_audio:
        if k.sample_rate < 1 or k.original_length % k.channels:
            raise TamperedKeyError("Audio shape is inconsistent")
    else:
        if k.original_width < 1 or k.original_height < 1:
            raise TamperedKeyError("Image dimensions must be positive")
    if k.media == MediaKind.VIDEO:
        if k.frame_count < 1 or k.fps_numerator < 1 or k.fps_denominator < 1:
            raise TamperedKeyError("Video frame count and fps must be positive")


def derive_from_timestamp(
    ts: int,
    n: int,
    iterations: int = 1,
    media: MediaKind = MediaKind.IMAGE,
) -> KeyMaterial:
    """Derive every cipher parameter from a unix timestamp (seconds)."""
    if box_size(n) < 2:
        raise InvalidArgumentError(f"Grid size must be at least 4, got {n}")
    if not 0 <= ts <= MASK64:
        raise InvalidArgumentError(f"Timestamp outside unsigned 64-bit range: {ts}")
    if iterations < 1:
        raise InvalidArgumentError(f"iterations must be positive, got {iterations}")

    key = KeyMaterial(
        timestamp=ts,
        grid=generate(n, seed=ts),
        threshold=(ts % THRESHOLD_MODULUS) + 1,
        shuffle_seed=mix_seed(ts),
        perm_row=ts % n,
        iterations=iterations,
        media=MediaKind(media),
    )
    log.debug(
        f"Derived {n}x{n} key from ts={ts}: threshold={key.threshold}, "
        f"perm_row={key.perm_row}, iterations={iterations}"
    )
    return key


def _shape_values(k: KeyMaterial) -> List[int]:
    if k.media == MediaKind.IMAGE:
        return [k.original_width, k.original_height, k.channels]
    if k.media.is_audio:
        return [k.original_length, k.channels, k.sample_rate]
    return [
        k.frame_count,
        k.fps_numerator,
        k.fps_denominator,
        k.original_width,
        k.original_height,
        k.channels,
    ]


def serialize(k: KeyMaterial) -> bytes:
    shape = " ".join(str(v) for v in _shape_values(k))
    lines = [
        KEY_MAGIC,
        f"timestamp {k.timestamp}",
        f"media {k.media.value}",
        f"threshold {k.threshold}",
        f"shuffle_seed {k.shuffle_seed}",
        f"perm_row {k.perm_row}",
        f"iterations {k.iterations}",
        f"{_SHAPE_KEYWORDS[k.media]} {shape}",
    ]
    text = "\n".join(lines) + "\n" + format_grid(k.puzzle or k.grid)
    return text.encode("ascii")


def _field(line: str, name: str, line_no: int, count: int = 1) -> List[str]:
    tokens = line.split(" ")
    if tokens[0] != name or len(tokens) != count + 1:
        raise KeyParseError(f"expected '{name}' with {count} value(s), got {line!r}", line_no)
    return tokens[1:]


def _int_field(line: str, name: str, line_no: int, count: int = 1) -> List[int]:
    values = _field(line, name, line_no, count)
    if not all(v.isdigit() for v in values):
        raise KeyParseError(f"'{name}' values must be decimal integers", line_no)
    return [int(v) for v in values]


def parse(data: bytes) -> KeyMaterial:
    """Parse and validate a key file, solving the grid if it is a puzzle."""
    if not data:
        raise KeyParseError("empty key file", 1)
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise KeyParseError(f"key file is not ASCII: {e}")
    if "\r" in text:
        raise KeyParseError("key file must use LF line endings")

    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    if len(lines) < 9:
        raise KeyParseError("key file truncated", len(lines) + 1)
    if lines[0] != KEY_MAGIC:
        raise KeyParseError(f"expected {KEY_MAGIC!r}", 1)

    (timestamp,) = _int_field(lines[1], "timestamp", 2)
    (media_name,) = _field(lines[2], "media", 3)
    try:
        media = MediaKind(media_name)
    except ValueError:
        raise KeyParseError(f"unknown media {media_name!r}", 3)
    (threshold,) = _int_field(lines[3], "threshold", 4)
    (shuffle_seed,) = _int_field(lines[4], "shuffle_seed", 5)
    (perm_row,) = _int_field(lines[5], "perm_row", 6)
    (iterations,) = _int_field(lines[6], "iterations", 7)
    shape_count = 6 if media == MediaKind.VIDEO else 3
    shape = _int_field(lines[7], _SHAPE_KEYWORDS[media], 8, shape_count)

    try:
        grid = parse_grid(lines[8:], first_line=9)
    except InvalidArgumentError as e:
        raise TamperedKeyError(f"Invalid Sudoku grid: {e}")

    puzzle = None
    if not validate(grid):
        log.warning("Rejected key: Sudoku grid violates its constraints")
        raise TamperedKeyError("Sudoku grid violates row/column/box constraints")
    if grid.empty_cells():
        solved = solve(grid)
        if solved is None:
            log.warning("Rejected key: Sudoku puzzle has no solution")
            raise TamperedKeyError("Sudoku puzzle has no solution")
        puzzle, grid = grid, solved

    shape_fields = {}
    if media == MediaKind.IMAGE:
        shape_fields = dict(zip(("original_width", "original_height", "channels"), shape))
    elif media.is_audio:
        shape_fields = dict(zip(("original_length", "channels", "sample_rate"), shape))
    else:
        shape_fields = dict(
            zip(
                (
                    "frame_count",
                    "fps_numerator",
                    "fps_denominator",
                    "original_width",
                    "original_height",
                    "channels",
                ),
                shape,
            )
        )

    return KeyMaterial(
        timestamp=timestamp,
        grid=grid,
        threshold=threshold,
        shuffle_seed=shuffle_seed,
        perm_row=perm_row,
        iterations=iterations,
        media=media,
        puzzle=puzzle,
        **shape_fields,
    )


def bind_image_shape(k: KeyMaterial, width: int, height: int, channels: int) -> KeyMaterial:
    """Record the plaintext raster shape, or confirm it matches the bound one."""
    if k.media not in (MediaKind.IMAGE, MediaKind.VIDEO):
        raise KeyMismatchError(f"Key is for {k.media.value} media, not images")
    bound = k.image_shape
    if bound is not None:
        if bound != (width, height, channels):
            raise KeyMismatchError(
                f"Key is bound to {bound[0]}x{bound[1]}x{bound[2]}, "
                f"input is {width}x{height}x{channels}"
            )
        return k
    return replace(k, original_width=width, original_height=height, channels=channels)


def bind_audio_shape(
    k: KeyMaterial, length: int, channels: int, sample_rate: int
) -> KeyMaterial:
    if not k.media.is_audio:
        raise KeyMismatchError(f"Key is for {k.media.value} media, not audio")
    if k.has_shape:
        bound = (k.original_length, k.channels, k.sample_rate)
        if bound != (length, channels, sample_rate):
            raise KeyMismatchError(
                f"Key is bound to {bound[0]} samples x{bound[1]} @ {bound[2]} Hz, "
                f"input is {length} samples x{channels} @ {sample_rate} Hz"
            )
        return k
    return replace(
        k, original_length=length, channels=channels, sample_rate=sample_rate
    )


def bind_video_shape(
    k: KeyMaterial,
    frame_count: int,
    fps_numerator: int,
    fps_denominator: int,
    width: int,
    height: int,
    channels: int,
) -> KeyMaterial:
    if k.media != MediaKind.VIDEO:
        raise KeyMismatchError(f"Key is for {k.media.value} media, not video")
    shape = (frame_count, fps_numerator, fps_denominator, width, height, channels)
    if k.has_shape:
        bound = (
            k.frame_count,
            k.fps_numerator,
            k.fps_denominator,
            k.original_width,
            k.original_height,
            k.channels,
        )
        if bound != shape:
            raise KeyMismatchError(f"Key is bound to video shape {bound}, input is {shape}")
        return k
    return replace(
        k,
        frame_count=frame_count,
        fps_numerator=fps_numerator,
        fps_denominator=fps_denominator,
        original_width=width,
        original_height=height,
        channels=channels,
    )


def read_key_file(path: Union[str, Path]) -> KeyMaterial:
    return parse(Path(path).read_bytes())


def write_key_file(path: Union[str, Path], k: KeyMaterial) -> None:
    """Write the key atomically so an in-place update never leaves half a file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(serialize(k))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
