"""
Lossless frame-directory video container.

A video is a directory of numbered P5/P6 frames plus ``manifest.txt``::

    SUDOCRYPT-VIDEO v1
    fps <num> <den>
    frames <count>
    <count relative frame filenames in display order>

The manifest is written last and acts as the commit point.
"""

import os
import tempfile
from pathlib import Path, PurePosixPath

from sudocrypt.utils.logger import log

from .exceptions import MediaFormatError
from .models import VideoSequence
from .netpbm import read_image, write_image
from .utils import PathLike, handle_media_errors

MANIFEST_NAME = "manifest.txt"
VIDEO_MAGIC = "SUDOCRYPT-VIDEO v1"


def frame_filename(index: int, channels: int) -> str:
    return f"frame_{index:06d}.{'pgm' if channels == 1 else 'ppm'}"


def _manifest_text(video: VideoSequence, names: list[str]) -> str:
    lines = [
        VIDEO_MAGIC,
        f"fps {video.fps_numerator} {video.fps_denominator}",
        f"frames {len(names)}",
        *names,
    ]
    return "\n".join(lines) + "\n"


def write_video(video: VideoSequence, directory: PathLike) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    names = []
    for index, frame in enumerate(video.frames):
        name = frame_filename(index, frame.channels)
        (directory / name).write_bytes(write_image(frame))
        names.append(name)

    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".manifest.")
    with os.fdopen(fd, "w", newline="\n", encoding="ascii") as f:
        f.write(_manifest_text(video, names))
    os.replace(tmp, directory / MANIFEST_NAME)
    log.debug(f"Wrote {len(names)} frames to {directory}")


def _int_tokens(line: str, keyword: str, count: int, line_no: int) -> list[int]:
    tokens = line.split(" ")
    if tokens[0] != keyword or len(tokens) != count + 1:
        raise MediaFormatError(f"manifest line {line_no}: expected '{keyword}'")
    if not all(t.isdigit() for t in tokens[1:]):
        raise MediaFormatError(f"manifest line {line_no}: values must be integers")
    return [int(t) for t in tokens[1:]]


@handle_media_errors
def read_video(directory: PathLike) -> VideoSequence:
    directory = Path(directory)
    manifest = directory / MANIFEST_NAME
    if not manifest.is_file():
        raise MediaFormatError(f"No {MANIFEST_NAME} in {directory}")

    lines = manifest.read_text(encoding="ascii").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3 or lines[0] != VIDEO_MAGIC:
        raise MediaFormatError(f"{manifest} is not a {VIDEO_MAGIC} manifest")
    fps_num, fps_den = _int_tokens(lines[1], "fps", 2, 2)
    (count,) = _int_tokens(lines[2], "frames", 1, 3)
    names = lines[3:]
    if len(names) != count:
        raise MediaFormatError(f"Manifest lists {len(names)} frames, header says {count}")

    frames = []
    for name in names:
        relative = PurePosixPath(name)
        if not name or relative.is_absolute() or ".." in relative.parts:
            raise MediaFormatError(f"Frame path must be relative: {name!r}")
        path = directory / relative
        if not path.is_file():
            raise MediaFormatError(f"Missing frame file {name}")
        frames.append(read_image(path.read_bytes()))
    return VideoSequence(fps_numerator=fps_num, fps_denominator=fps_den, frames=frames)
