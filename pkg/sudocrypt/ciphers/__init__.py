"""
Cipher package: image, audio and per-frame video encryption.
"""

from .audio_cipher import (
    decrypt_audio,
    encrypt_audio,
    shuffle_decrypt,
    shuffle_encrypt,
    xor_decrypt,
    xor_encrypt,
)
from .exceptions import CipherError, PreconditionError
from .image_cipher import (
    block_transform,
    block_untransform,
    crop_image,
    decrypt_image,
    encrypt_image,
    pad_image,
    rotate_ccw,
    rotate_cw,
    row_shuffle,
    row_unshuffle,
    seal_image,
    threshold_decrypt,
    threshold_encrypt,
)
from .models import STAGES, BlockLayout, FrameJob, StageTrace
from .video_cipher import decrypt_video, encrypt_video

__all__ = [
    # Models
    "STAGES",
    "StageTrace",
    "BlockLayout",
    "FrameJob",
    # Image stages
    "threshold_encrypt",
    "threshold_decrypt",
    "pad_image",
    "crop_image",
    "row_shuffle",
    "row_unshuffle",
    "block_transform",
    "block_untransform",
    "rotate_cw",
    "rotate_ccw",
    "encrypt_image",
    "seal_image",
    "decrypt_image",
    # Audio
    "shuffle_encrypt",
    "shuffle_decrypt",
    "xor_encrypt",
    "xor_decrypt",
    "encrypt_audio",
    "decrypt_audio",
    # Video
    "encrypt_video",
    "decrypt_video",
    # Exceptions
    "CipherError",
    "PreconditionError",
]
