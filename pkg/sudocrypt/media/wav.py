"""
RIFF/WAVE codec for 16-bit PCM, mono or stereo.
"""

import struct
from pathlib import Path

import numpy as np

from sudocrypt.utils.logger import log

from .exceptions import MediaFormatError, UnsupportedFormatError
from .models import AudioClip
from .utils import PathLike, handle_media_errors

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_EXTENSIBLE = 0xFFFE
_HEADER = struct.Struct("<4sI4s4sIHHIIHH4sI")


@handle_media_errors
def read_wav(data: bytes) -> AudioClip:
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MediaFormatError("Not a RIFF/WAVE file")

    fmt = None
    payload = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id, size = struct.unpack_from("<4sI", data, offset)
        body = data[offset + 8 : offset + 8 + size]
        if len(body) < size:
            raise MediaFormatError(f"Chunk {chunk_id!r} truncated")
        if chunk_id == b"fmt ":
            fmt = body
        elif chunk_id == b"data":
            payload = body
        else:
            log.debug(f"Skipping WAV chunk {chunk_id!r} ({size} bytes)")
        offset += 8 + size + (size & 1)

    if fmt is None or payload is None:
        raise MediaFormatError("WAV file lacks a fmt or data chunk")

    audio_format, channels, sample_rate, _, block_align, bits = struct.unpack_from(
        "<HHIIHH", fmt
    )
    if audio_format == WAVE_FORMAT_EXTENSIBLE and len(fmt) >= 26:
        (audio_format,) = struct.unpack_from("<H", fmt, 24)
    if audio_format != WAVE_FORMAT_PCM:
        raise UnsupportedFormatError(f"Only PCM WAV is supported, format code {audio_format:#x}")
    if bits != 16:
        raise UnsupportedFormatError(f"Only 16-bit samples are supported, got {bits}")
    if channels not in (1, 2):
        raise UnsupportedFormatError(f"Only mono or stereo is supported, got {channels}")
    if block_align != 2 * channels or len(payload) % block_align:
        raise MediaFormatError("WAV data does not divide into whole sample frames")

    samples = np.frombuffer(payload, dtype="<i2").astype(np.int16)
    return AudioClip(sample_rate=sample_rate, channels=channels, samples=samples)


def write_wav(clip: AudioClip) -> bytes:
    """Canonical minimal RIFF: a 16-byte fmt chunk followed by the data chunk."""
    payload = clip.samples.astype("<i2").tobytes()
    header = _HEADER.pack(
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        WAVE_FORMAT_PCM,
        clip.channels,
        clip.sample_rate,
        clip.sample_rate * clip.channels * 2,
        clip.channels * 2,
        16,
        b"data",
        len(payload),
    )
    return header + payload


def load_wav(path: PathLike) -> AudioClip:
    return read_wav(Path(path).read_bytes())


def save_wav(path: PathLike, clip: AudioClip) -> None:
    Path(path).write_bytes(write_wav(clip))
