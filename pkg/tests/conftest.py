"""
Test configuration and shared fixtures.
"""

import numpy as np
import pytest

from sudocrypt.configs.config import get_config
from sudocrypt.keys.keymat import MediaKind, bind_video_shape, derive_from_timestamp
from sudocrypt.media.models import AudioClip, Image, VideoSequence

TIMESTAMP = 1_700_000_000


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch, tmp_path):
    """Keep tests away from any real config file and cached settings."""
    monkeypatch.setenv("CONFIG_PATH", str(tmp_path / "absent-config.yaml"))
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def key4():
    return derive_from_timestamp(TIMESTAMP, 4)


@pytest.fixture
def key9():
    return derive_from_timestamp(TIMESTAMP, 9)


@pytest.fixture
def gray16():
    """16x16 grayscale ramp with pixel (x, y) = (7x + 13y) mod 256."""
    y, x = np.mgrid[0:16, 0:16]
    return Image(((7 * x + 13 * y) % 256).astype(np.uint8))


@pytest.fixture
def rgb_image(rng):
    return Image(rng.integers(0, 256, size=(36, 45, 3), dtype=np.uint8))


@pytest.fixture
def odd_gray(rng):
    """97 wide, 53 high: neither side is a multiple of any grid size."""
    return Image(rng.integers(0, 256, size=(53, 97), dtype=np.uint8))


@pytest.fixture
def mono_clip(rng):
    samples = rng.integers(-32768, 32768, size=1000, dtype=np.int16)
    return AudioClip(sample_rate=8000, channels=1, samples=samples)


@pytest.fixture
def stereo_clip(rng):
    samples = rng.integers(-32768, 32768, size=2 * 501, dtype=np.int16)
    return AudioClip(sample_rate=44100, channels=2, samples=samples)


@pytest.fixture
def sine_clip():
    t = np.arange(4410)
    samples = (np.sin(2 * np.pi * 440 * t / 44100) * 20000).astype(np.int16)
    return AudioClip(sample_rate=44100, channels=1, samples=samples)


@pytest.fixture
def video(rng):
    frames = [Image(rng.integers(0, 256, size=(12, 10, 3), dtype=np.uint8)) for _ in range(5)]
    return VideoSequence(fps_numerator=30000, fps_denominator=1001, frames=frames)


@pytest.fixture
def video_key(video):
    key = derive_from_timestamp(TIMESTAMP, 4, media=MediaKind.VIDEO)
    width, height, channels = video.frame_shape
    return bind_video_shape(key, len(video), 30000, 1001, width, height, channels)
