"""
Timing sweeps. Each suite returns a pandas DataFrame whose columns mirror one
timing table; absolute seconds depend on the machine, only shape and trend
are meaningful.
"""

import time
from pathlib import Path
from typing import Callable, Dict, Iterable, Union

import numpy as np
import pandas as pd

from sudocrypt.ciphers.image_cipher import encrypt_image
from sudocrypt.configs.config import BenchConfig
from sudocrypt.keys.exceptions import InvalidArgumentError
from sudocrypt.keys.keymat import bind_image_shape, derive_from_timestamp
from sudocrypt.keys.sudoku import generate
from sudocrypt.media.models import Image
from sudocrypt.utils.logger import log

from .samples import noise, sample_images

SIZE_REPEATS = 5


def _timed(func: Callable[[], object]) -> float:
    started = time.perf_counter()
    func()
    return time.perf_counter() - started


def bench_keygen(counts: Iterable[int], n: int, timestamp: int) -> pd.DataFrame:
    """Seconds to derive ``count`` keys from consecutive timestamps."""
    rows = []
    for count in counts:

        def _derive(count: int = count) -> None:
            for ts in range(timestamp, timestamp + count):
                derive_from_timestamp(ts, n)

        seconds = _timed(_derive)
        log.info(f"keygen: {count} keys in {seconds:.4f}s")
        rows.append({"keys": count, "seconds": seconds})
    return pd.DataFrame(rows, columns=["keys", "seconds"])


def bench_sudoku_sizes(sizes: Iterable[int], timestamp: int) -> pd.DataFrame:
    """Seconds per grid generation at each size, averaged over a few seeds."""
    rows = []
    for size in sizes:

        def _generate(size: int = size) -> None:
            for seed in range(timestamp, timestamp + SIZE_REPEATS):
                generate(size, seed)

        seconds = _timed(_generate) / SIZE_REPEATS
        log.info(f"sudoku-sizes: n={size} in {seconds:.4f}s")
        rows.append({"size": size, "seconds": seconds})
    return pd.DataFrame(rows, columns=["size", "seconds"])


def _encrypt_seconds(img: Image, n: int, timestamp: int, iterations: int) -> float:
    key = derive_from_timestamp(timestamp, n, iterations=iterations)
    key = bind_image_shape(key, *img.shape)
    return _timed(lambda: encrypt_image(img, key))


def bench_iterations(
    counts: Iterable[int], n: int, image_size: int, timestamp: int
) -> pd.DataFrame:
    """Seconds to encrypt one noise image for each iteration count."""
    img = noise(image_size)
    rows = []
    for iterations in counts:
        seconds = _encrypt_seconds(img, n, timestamp, iterations)
        log.info(f"iterations: {iterations} rounds in {seconds:.4f}s")
        rows.append({"iterations": iterations, "seconds": seconds})
    return pd.DataFrame(rows, columns=["iterations", "seconds"])


def bench_images(n: int, image_size: int, timestamp: int) -> pd.DataFrame:
    rows = []
    for name, img in sample_images(image_size).items():
        seconds = _encrypt_seconds(img, n, timestamp, 1)
        rows.append(
            {
                "image": name,
                "resolution": f"{img.width}x{img.height}",
                "sudoku": f"{n}x{n}",
                "seconds": seconds,
            }
        )
    return pd.DataFrame(rows, columns=["image", "resolution", "sudoku", "seconds"])


SUITES: Dict[str, Callable[[BenchConfig], pd.DataFrame]] = {
    "keygen": lambda c: bench_keygen(c.key_counts, c.grid_size, c.timestamp),
    "iterations": lambda c: bench_iterations(
        c.iteration_counts, c.grid_size, c.image_size, c.timestamp
    ),
    "images": lambda c: bench_images(c.grid_size, c.image_size, c.timestamp),
    "sudoku-sizes": lambda c: bench_sudoku_sizes(c.sudoku_sizes, c.timestamp),
}


def run_suite(name: str, config: BenchConfig) -> pd.DataFrame:
    if name not in SUITES:
        raise InvalidArgumentError(f"Unknown bench suite {name!r}; choose from {', '.join(SUITES)}")
    log.info(f"Running bench suite {name}")
    return SUITES[name](config)


def is_non_decreasing(values: Iterable[float], slack: float = 0.0) -> bool:
    """True if every value is at least its predecessor minus ``slack`` (relative)."""
    array = np.asarray(list(values), dtype=np.float64)
    return bool(np.all(array[1:] >= array[:-1] * (1.0 - slack)))


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    """Comma-separated with a header row, LF endings and dot decimals."""
    frame.to_csv(path, index=False, lineterminator="\n")
