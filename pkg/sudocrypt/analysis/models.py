"""
Report models for image and audio metric analysis.
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, Tuple, Union

Row = Dict[str, Union[str, float, bool]]


@dataclass
class ImageMetricsReport:
    npcr: float
    uaci: float
    entropy_original: float
    entropy_encrypted: float
    channel_means_original: Tuple[float, ...]
    channel_means_encrypted: Tuple[float, ...]
    # True when the pair was cropped to its common top-left region
    cropped: bool = False

    def as_row(self, name: str = "") -> Row:
        row: Row = {
            "image": name,
            "npcr": self.npcr,
            "uaci": self.uaci,
            "entropy_original": self.entropy_original,
            "entropy_encrypted": self.entropy_encrypted,
        }
        for c, value in enumerate(self.channel_means_original):
            row[f"mean_original_c{c}"] = value
        for c, value in enumerate(self.channel_means_encrypted):
            row[f"mean_encrypted_c{c}"] = value
        row["cropped"] = self.cropped
        return row


@dataclass
class AudioMetricsReport:
    """SNR and PSNR are in dB; ``math.inf`` means the signals are identical."""

    snr: float
    psnr: float
    mse: float
    zcr_original: float
    zcr_encrypted: float
    rms_original: float
    rms_encrypted: float
    sample_change_rate: float = 0.0
    truncated: bool = False

    def as_row(self, name: str = "") -> Row:
        return {"clip": name, **asdict(self)}


@dataclass
class SensitivityReport:
    """Ciphertext difference caused by changing one plaintext sample."""

    npcr: float
    uaci: float
    position: Tuple[int, int, int] = field(default=(0, 0, 0))

    def as_row(self, name: str = "") -> Row:
        x, y, c = self.position
        return {"image": name, "x": x, "y": y, "channel": c, "npcr": self.npcr, "uaci": self.uaci}
