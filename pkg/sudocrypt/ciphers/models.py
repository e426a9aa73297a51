"""
Data models for the cipher pipelines.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, TypeVar

import pandas as pd

from sudocrypt.keys.exceptions import InvalidArgumentError
from sudocrypt.media.models import Image

STAGES = ("threshold", "pad_shuffle", "block_transform", "rotate")

R = TypeVar("R")


@dataclass
class StageTrace:
    """Cumulative wall-clock time per image stage, summed over rounds."""

    retain_outputs: bool = False
    durations_ms: Dict[str, float] = field(
        default_factory=lambda: {stage: 0.0 for stage in STAGES}
    )
    # Output of the last round for each stage, when retain_outputs is set.
    outputs: Dict[str, Image] = field(default_factory=dict)

    def run(self, stage: str, func: Callable[..., Image], *args) -> Image:
        if stage not in self.durations_ms:
            raise InvalidArgumentError(f"Unknown stage {stage!r}")
        started = time.perf_counter()
        result = func(*args)
        self.durations_ms[stage] += (time.perf_counter() - started) * 1000.0
        if self.retain_outputs:
            self.outputs[stage] = result
        return result

    @property
    def total_ms(self) -> float:
        return sum(self.durations_ms.values())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "stage": list(self.durations_ms),
                "milliseconds": list(self.durations_ms.values()),
            }
        )


def run_stage(
    trace: Optional[StageTrace], stage: str, func: Callable[..., R], *args
) -> R:
    if trace is None:
        return func(*args)
    return trace.run(stage, func, *args)


@dataclass(frozen=True)
class BlockLayout:
    """How an audio stream splits into blocks of the grid size."""

    block_size: int
    num_full_blocks: int
    tail_length: int
    padded_length: int

    def __post_init__(self):
        if self.block_size < 1:
            raise InvalidArgumentError(f"Block size must be positive, got {self.block_size}")
        if not 0 <= self.tail_length < self.block_size:
            raise InvalidArgumentError(
                f"Tail length {self.tail_length} outside 0..{self.block_size - 1}"
            )
        if (
            self.padded_length < self.original_length
            or self.padded_length % self.block_size
        ):
            raise InvalidArgumentError(
                f"Padded length {self.padded_length} does not fit {self.original_length} "
                f"samples in blocks of {self.block_size}"
            )

    @property
    def original_length(self) -> int:
        return self.num_full_blocks * self.block_size + self.tail_length

    @property
    def num_rows(self) -> int:
        return self.padded_length // self.block_size

    @classmethod
    def for_length(cls, length: int, block_size: int, channels: int = 1) -> "BlockLayout":
        """Pad up to a multiple of lcm(block_size, channels)."""
        unit = math.lcm(block_size, channels)
        padded = -(-length // unit) * unit
        full, tail = divmod(length, block_size)
        return cls(block_size, full, tail, padded)


@dataclass
class FrameJob:
    """One frame passing through the image cipher."""

    index: int
    input: Image
    output: Optional[Image] = None
    duration_ms: float = 0.0
