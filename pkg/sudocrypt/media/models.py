"""
In-memory media values shared by the containers and the ciphers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .exceptions import MediaFormatError


@dataclass(eq=False)
class Image:
    """Raster of 8-bit samples stored as an (height, width, channels) array."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim == 2:
            pixels = pixels[:, :, np.newaxis]
        if pixels.ndim != 3:
            raise MediaFormatError(f"Image array must be 2-D or 3-D, got {pixels.ndim}-D")
        if pixels.dtype != np.uint8:
            if pixels.size and (pixels.min() < 0 or pixels.max() > 255):
                raise MediaFormatError("Image samples must fit in 8 bits")
            pixels = pixels.astype(np.uint8)
        height, width, channels = pixels.shape
        if width < 1 or height < 1:
            raise MediaFormatError(f"Image dimensions must be positive, got {width}x{height}")
        if not 1 <= channels <= 4:
            raise MediaFormatError(f"Unsupported channel count {channels}")
        self.pixels = np.ascontiguousarray(pixels)

    @classmethod
    def from_samples(
        cls, width: int, height: int, channels: int, samples: bytes
    ) -> "Image":
        """Build from a row-major sample buffer of exactly width*height*channels bytes."""
        expected = width * height * channels
        if len(samples) != expected:
            raise MediaFormatError(
                f"Expected {expected} samples for {width}x{height}x{channels}, "
                f"got {len(samples)}"
            )
        array = np.frombuffer(samples, dtype=np.uint8).reshape(height, width, channels)
        return cls(array.copy())

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    @property
    def shape(self) -> Tuple[int, int, int]:
        """(width, height, channels), the order key files use."""
        return self.width, self.height, self.channels

    @property
    def samples(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


@dataclass(eq=False)
class AudioClip:
    """Signed 16-bit PCM, interleaved when stereo."""

    sample_rate: int
    channels: int
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples).reshape(-1)
        if samples.dtype != np.int16:
            if samples.size and (samples.min() < -32768 or samples.max() > 32767):
                raise MediaFormatError("Audio samples must fit in signed 16 bits")
            samples = samples.astype(np.int16)
        if self.sample_rate < 1:
            raise MediaFormatError(f"Sample rate must be positive, got {self.sample_rate}")
        if self.channels not in (1, 2):
            raise MediaFormatError(f"Unsupported channel count {self.channels}")
        if samples.size % self.channels:
            raise MediaFormatError(
                f"{samples.size} samples do not divide into {self.channels} channels"
            )
        self.samples = np.ascontiguousarray(samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def frames(self) -> int:
        return len(self) // self.channels

    def normalized(self) -> np.ndarray:
        return self.samples.astype(np.float64) / 32768.0

    def with_samples(self, samples: np.ndarray) -> "AudioClip":
        return AudioClip(self.sample_rate, self.channels, samples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AudioClip):
            return NotImplemented
        return (
            self.sample_rate == other.sample_rate
            and self.channels == other.channels
            and bool(np.array_equal(self.samples, other.samples))
        )


@dataclass(eq=False)
class VideoSequence:
    """Ordered lossless frames sharing one shape, plus a rational frame rate."""

    fps_numerator: int
    fps_denominator: int
    frames: List[Image] = field(default_factory=list)

    def __post_init__(self):
        if self.fps_numerator < 1 or self.fps_denominator < 1:
            raise MediaFormatError(
                f"Frame rate must be positive, got {self.fps_numerator}/{self.fps_denominator}"
            )
        shapes = {frame.shape for frame in self.frames}
        if len(shapes) > 1:
            raise MediaFormatError(f"Frames have mixed dimensions: {sorted(shapes)}")
        self.frames = list(self.frames)

    @property
    def fps(self) -> Fraction:
        return Fraction(self.fps_numerator, self.fps_denominator)

    @property
    def frame_shape(self) -> Tuple[int, int, int]:
        if not self.frames:
            raise MediaFormatError("Video has no frames")
        return self.frames[0].shape

    def __len__(self) -> int:
        return len(self.frames)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VideoSequence):
            return NotImplemented
        return self.fps == other.fps and self.frames == other.frames
