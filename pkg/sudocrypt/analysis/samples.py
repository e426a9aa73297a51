"""
Deterministic synthetic test images used by the ``images`` bench suite.
"""

from typing import Callable, Dict

import numpy as np

from sudocrypt.media.models import Image

SAMPLE_SEED = 2024


def gradient(size: int) -> Image:
    """RGB ramp: red follows x, green follows y, blue their sum."""
    ramp = np.arange(size, dtype=np.int64) * 255 // max(size - 1, 1)
    red = np.tile(ramp, (size, 1))
    green = red.T
    blue = (red + green) // 2
    return Image(np.stack([red, green, blue], axis=2).astype(np.uint8))


def checkerboard(size: int, square: int = 8) -> Image:
    cells = (np.arange(size) // square) % 2
    return Image(((cells[:, None] ^ cells[None, :]) * 255).astype(np.uint8))


def noise(size: int, seed: int = SAMPLE_SEED) -> Image:
    rng = np.random.default_rng(seed)
    return Image(rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8))


SAMPLES: Dict[str, Callable[[int], Image]] = {
    "gradient": gradient,
    "checkerboard": checkerboard,
    "noise": noise,
}


def sample_images(size: int) -> Dict[str, Image]:
    return {name: make(size) for name, make in SAMPLES.items()}
