"""
Analysis package: security and quality metrics plus timing benchmarks.
"""

from .bench import SUITES, run_suite, write_csv
from .exceptions import AnalysisError, DimensionError
from .metrics import (
    analyze_audio,
    analyze_images,
    channel_means,
    crop_to_common,
    histogram,
    mse,
    npcr,
    plaintext_sensitivity,
    psnr,
    rms,
    sample_change_rate,
    shannon_entropy,
    snr,
    uaci,
    zcr,
)
from .models import AudioMetricsReport, ImageMetricsReport, SensitivityReport
from .samples import sample_images

__all__ = [
    # Reports
    "ImageMetricsReport",
    "AudioMetricsReport",
    "SensitivityReport",
    # Image metrics
    "npcr",
    "uaci",
    "histogram",
    "shannon_entropy",
    "channel_means",
    "crop_to_common",
    "analyze_images",
    "plaintext_sensitivity",
    # Audio metrics
    "mse",
    "snr",
    "psnr",
    "zcr",
    "rms",
    "sample_change_rate",
    "analyze_audio",
    # Benchmarks
    "SUITES",
    "run_suite",
    "write_csv",
    "sample_images",
    # Exceptions
    "AnalysisError",
    "DimensionError",
]
