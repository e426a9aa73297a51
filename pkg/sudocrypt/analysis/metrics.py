"""
Evaluation metrics: NPCR, UACI, entropy and channel means for images; MSE,
SNR, PSNR, zero-crossing rate and RMS for audio.

Audio metrics work on samples normalized to s / 32768. They also accept plain
float arrays, taken as already normalized.
"""

import math
from typing import Optional, Tuple, Union

import numpy as np

from sudocrypt.ciphers.image_cipher import encrypt_image, seal_image
from sudocrypt.keys.keymat import KeyMaterial
from sudocrypt.media.models import AudioClip, Image
from sudocrypt.utils.logger import log

from .exceptions import DimensionError
from .models import AudioMetricsReport, ImageMetricsReport, SensitivityReport

Signal = Union[AudioClip, np.ndarray]

INTENSITY_RANGE = 255


def _check_images(c1: Image, c2: Image) -> None:
    if c1.pixels.shape != c2.pixels.shape:
        raise DimensionError(
            f"Images differ in shape: {c1.width}x{c1.height}x{c1.channels} vs "
            f"{c2.width}x{c2.height}x{c2.channels}"
        )


def npcr(c1: Image, c2: Image) -> float:
    """Percentage of pixel positions where any channel differs."""
    _check_images(c1, c2)
    changed = np.any(c1.pixels != c2.pixels, axis=2)
    return float(changed.mean() * 100.0)


def uaci(c1: Image, c2: Image) -> float:
    """Mean absolute sample difference over 255, as a percentage."""
    _check_images(c1, c2)
    diff = np.abs(c1.pixels.astype(np.int16) - c2.pixels.astype(np.int16))
    return float(diff.sum() / (INTENSITY_RANGE * diff.size) * 100.0)


def histogram(img: Image) -> np.ndarray:
    """256-bin histogram of all samples pooled across channels."""
    return np.bincount(img.pixels.reshape(-1), minlength=256)


def shannon_entropy(img: Image) -> float:
    counts = histogram(img)
    p = counts[counts > 0] / counts.sum()
    return float(0.0 - np.sum(p * np.log2(p)))


def channel_means(img: Image) -> Tuple[float, ...]:
    means = img.pixels.reshape(-1, img.channels).mean(axis=0)
    return tuple(float(m) for m in means)


def crop_to_common(a: Image, b: Image) -> Tuple[Image, Image]:
    """Crop both images to their common top-left region."""
    if a.channels != b.channels:
        raise DimensionError(f"Channel counts differ: {a.channels} vs {b.channels}")
    width = min(a.width, b.width)
    height = min(a.height, b.height)
    return Image(a.pixels[:height, :width]), Image(b.pixels[:height, :width])


def analyze_images(original: Image, encrypted: Image, crop: bool = False) -> ImageMetricsReport:
    """Compare a plaintext with its ciphertext.

    Entropy and channel means are taken over each full image; NPCR and UACI
    need equal shapes, or ``crop`` to compare the common top-left region.
    """
    cropped = False
    a, b = original, encrypted
    if crop and a.pixels.shape != b.pixels.shape:
        a, b = crop_to_common(a, b)
        cropped = True
        log.info(f"Cropped comparison to {a.width}x{a.height}")

    return ImageMetricsReport(
        npcr=npcr(a, b),
        uaci=uaci(a, b),
        entropy_original=shannon_entropy(original),
        entropy_encrypted=shannon_entropy(encrypted),
        channel_means_original=channel_means(original),
        channel_means_encrypted=channel_means(encrypted),
        cropped=cropped,
    )


def _normalized(x: Signal) -> np.ndarray:
    if isinstance(x, AudioClip):
        return x.normalized()
    return np.asarray(x, dtype=np.float64).reshape(-1)


def _pair(a: Signal, b: Signal) -> Tuple[np.ndarray, np.ndarray]:
    xa, xb = _normalized(a), _normalized(b)
    if xa.size != xb.size:
        raise DimensionError(f"Signals differ in length: {xa.size} vs {xb.size}")
    if xa.size == 0:
        raise DimensionError("Signals are empty")
    return xa, xb


def mse(a: Signal, b: Signal) -> float:
    xa, xb = _pair(a, b)
    return float(np.mean((xa - xb) ** 2))


def snr(a: Signal, b: Signal) -> float:
    """SNR of ``b`` against reference ``a`` in dB; ``inf`` when identical."""
    xa, xb = _pair(a, b)
    noise = float(np.sum((xa - xb) ** 2))
    if noise == 0.0:
        return math.inf
    signal = float(np.sum(xa**2))
    if signal == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal / noise)


def psnr(a: Signal, b: Signal) -> float:
    error = mse(a, b)
    if error == 0.0:
        return math.inf
    peak = float(np.max(_normalized(a) ** 2))
    if peak == 0.0:
        return -math.inf
    return 10.0 * math.log10(peak / error)


def zcr(a: Signal) -> float:
    """Fraction of consecutive sample pairs whose sign differs; zero counts as positive."""
    x = _normalized(a)
    if x.size < 2:
        raise DimensionError("Zero-crossing rate needs at least 2 samples")
    nonnegative = x >= 0
    return float(np.count_nonzero(nonnegative[1:] != nonnegative[:-1]) / (x.size - 1))


def rms(a: Signal) -> float:
    x = _normalized(a)
    if x.size < 1:
        raise DimensionError("RMS needs at least 1 sample")
    return float(np.sqrt(np.mean(x**2)))


def sample_change_rate(a: Signal, b: Signal) -> float:
    """Percentage of sample positions whose values differ."""
    xa, xb = _pair(a, b)
    return float(np.count_nonzero(xa != xb) / xa.size * 100.0)


def analyze_audio(original: AudioClip, encrypted: AudioClip) -> AudioMetricsReport:
    """Compare a clip with its ciphertext, truncating XOR padding if present."""
    truncated = False
    if len(encrypted) > len(original):
        encrypted = encrypted.with_samples(encrypted.samples[: len(original)])
        truncated = True

    return AudioMetricsReport(
        snr=snr(original, encrypted),
        psnr=psnr(original, encrypted),
        mse=mse(original, encrypted),
        zcr_original=zcr(original),
        zcr_encrypted=zcr(encrypted),
        rms_original=rms(original),
        rms_encrypted=rms(encrypted),
        sample_change_rate=sample_change_rate(original, encrypted),
        truncated=truncated,
    )


def plaintext_sensitivity(
    img: Image, k: KeyMaterial, position: Optional[Tuple[int, int, int]] = None
) -> SensitivityReport:
    """Encrypt ``img`` and a copy with one sample bumped by 1, then compare ciphertexts.

    ``position`` is (x, y, channel) and defaults to the centre pixel's first channel.
    """
    if position is None:
        position = (img.width // 2, img.height // 2, 0)
    x, y, c = position
    if not (0 <= x < img.width and 0 <= y < img.height and 0 <= c < img.channels):
        raise DimensionError(f"Position {position} outside {img.width}x{img.height}x{img.channels}")

    changed = img.pixels.copy()
    changed[y, x, c] = (int(changed[y, x, c]) + 1) % 256

    c1, key = seal_image(img, k)
    c2 = encrypt_image(Image(changed), key)
    report = SensitivityReport(npcr=npcr(c1, c2), uaci=uaci(c1, c2), position=position)
    log.debug(f"Plaintext sensitivity at {position}: NPCR {report.npcr:.4f}%")
    return report
