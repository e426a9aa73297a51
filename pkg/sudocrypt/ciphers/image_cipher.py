"""
Image cipher: threshold -> pad/row shuffle -> Sudoku block transform -> rotate.

Every stage is a bijection on padded rasters, and decryption runs the exact
inverses in reverse order before cropping the padding away. All stages move
whole pixels except the threshold shift, which acts per sample.
"""

from typing import Optional, Tuple

import numpy as np

from sudocrypt.keys.exceptions import InvalidArgumentError, KeyMismatchError
from sudocrypt.keys.keymat import KeyMaterial, MediaKind, bind_image_shape
from sudocrypt.keys.prng import Permutation, derive_permutation, invert_permutation, mix_seed
from sudocrypt.keys.sudoku import row_permutation
from sudocrypt.media.models import Image
from sudocrypt.utils.logger import log

from .exceptions import PreconditionError
from .models import StageTrace, run_stage


def _check_threshold(r: int) -> None:
    if not 1 <= r <= 255:
        raise InvalidArgumentError(f"Threshold must be in 1..255, got {r}")


def threshold_encrypt(img: Image, r: int) -> Image:
    """Add ``r`` to every sample modulo 256."""
    _check_threshold(r)
    return Image(((img.pixels.astype(np.int16) + r) % 256).astype(np.uint8))


def threshold_decrypt(img: Image, r: int) -> Image:
    _check_threshold(r)
    return Image(((img.pixels.astype(np.int16) - r) % 256).astype(np.uint8))


def padded_dims(width: int, height: int, n: int) -> Tuple[int, int]:
    """Smallest (width, height) at least as large that are multiples of n."""
    return -(-width // n) * n, -(-height // n) * n


def pad_image(img: Image, n: int) -> Image:
    """Zero-pad right and bottom up to multiples of n."""
    if n < 2:
        raise InvalidArgumentError(f"Grid size must be at least 2, got {n}")
    width, height = padded_dims(img.width, img.height, n)
    if (width, height) == (img.width, img.height):
        return img
    pad = ((0, height - img.height), (0, width - img.width), (0, 0))
    return Image(np.pad(img.pixels, pad, mode="constant", constant_values=0))


def crop_image(img: Image, width: int, height: int) -> Image:
    if not (1 <= width <= img.width and 1 <= height <= img.height):
        raise InvalidArgumentError(
            f"Cannot crop {img.width}x{img.height} to {width}x{height}"
        )
    return Image(img.pixels[:height, :width])


def row_shuffle(img: Image, seed: int) -> Image:
    """Output row i is input row p.map[i] for p = derive_permutation(seed, height)."""
    p = derive_permutation(seed, img.height)
    return Image(img.pixels[p.as_array()])


def row_unshuffle(img: Image, seed: int) -> Image:
    p = invert_permutation(derive_permutation(seed, img.height))
    return Image(img.pixels[p.as_array()])


def _tiles(img: Image, n: int) -> np.ndarray:
    if img.width % n or img.height % n:
        raise PreconditionError(
            f"{img.width}x{img.height} image does not tile into {n}x{n} blocks"
        )
    # axes: tile row, row within tile, tile column, column within tile, channel
    return img.pixels.reshape(img.height // n, n, img.width // n, n, img.channels)


def block_transform(img: Image, perm: Permutation) -> Image:
    """Permute columns inside every tile row, then the rows of every tile."""
    index = perm.as_array()
    tiles = _tiles(img, len(perm))
    tiles = tiles[:, :, :, index, :]
    tiles = tiles[:, index, :, :, :]
    return Image(tiles.reshape(img.pixels.shape))


def block_untransform(img: Image, perm: Permutation) -> Image:
    index = invert_permutation(perm).as_array()
    tiles = _tiles(img, len(perm))
    tiles = tiles[:, index, :, :, :]
    tiles = tiles[:, :, :, index, :]
    return Image(tiles.reshape(img.pixels.shape))


def rotate_cw(img: Image) -> Image:
    """Source pixel (x, y) lands at (H-1-y, x); output is H wide and W high."""
    return Image(np.rot90(img.pixels, k=-1, axes=(0, 1)))


def rotate_ccw(img: Image) -> Image:
    return Image(np.rot90(img.pixels, k=1, axes=(0, 1)))


def round_seed(k: KeyMaterial, round_index: int) -> int:
    return mix_seed(k.shuffle_seed, round_index)


def _check_media(k: KeyMaterial) -> None:
    if k.media not in (MediaKind.IMAGE, MediaKind.VIDEO):
        raise KeyMismatchError(f"Key is for {k.media.value} media, not images")


def _pad_and_shuffle(img: Image, n: int, seed: int, pad: bool) -> Image:
    return row_shuffle(pad_image(img, n) if pad else img, seed)


def encrypt_image(
    img: Image, k: KeyMaterial, trace: Optional[StageTrace] = None
) -> Image:
    """Encrypt ``img`` for ``k.iterations`` rounds; padding happens in round 0 only.

    The key's image shape must be unbound or equal to the input shape. This
    function does not record the shape in ``k``: decryption needs a key bound
    with ``keymat.bind_image_shape``, which ``seal_image`` returns.
    """
    _check_media(k)
    bound = k.image_shape
    if bound is not None and bound != img.shape:
        raise KeyMismatchError(
            f"Key is bound to {bound[0]}x{bound[1]}x{bound[2]}, "
            f"input is {img.width}x{img.height}x{img.channels}"
        )

    perm = row_permutation(k.grid, k.perm_row)
    out = img
    for t in range(k.iterations):
        out = run_stage(trace, "threshold", threshold_encrypt, out, k.threshold)
        out = run_stage(
            trace, "pad_shuffle", _pad_and_shuffle, out, k.n, round_seed(k, t), t == 0
        )
        out = run_stage(trace, "block_transform", block_transform, out, perm)
        out = run_stage(trace, "rotate", rotate_cw, out)
    log.debug(
        f"Encrypted {img.width}x{img.height}x{img.channels} image into "
        f"{out.width}x{out.height} over {k.iterations} round(s)"
    )
    return out


def seal_image(
    img: Image, k: KeyMaterial, trace: Optional[StageTrace] = None
) -> Tuple[Image, KeyMaterial]:
    """Bind ``img``'s shape into ``k`` and encrypt; returns the ciphertext and the bound key."""
    key = bind_image_shape(k, *img.shape)
    return encrypt_image(img, key, trace), key

def ciphertext_dims(k: KeyMaterial) -> Tuple[int, int]:
    """(width, height) an encryption under ``k`` produces for its bound shape."""
    bound = k.image_shape
    if bound is None:
        raise KeyMismatchError("Key carries no image shape; encrypt with it first")
    width, height = padded_dims(bound[0], bound[1], k.n)
    return (width, height) if k.iterations % 2 == 0 else (height, width)


def decrypt_image(
    img: Image, k: KeyMaterial, trace: Optional[StageTrace] = None
) -> Image:
    """Undo every round in reverse, then crop to the key's original dims."""
    _check_media(k)
    expected = ciphertext_dims(k)
    width, height, channels = k.image_shape or (0, 0, 0)
    if (img.width, img.height) != expected or img.channels != channels:
        raise KeyMismatchError(
            f"Ciphertext is {img.width}x{img.height}x{img.channels}, key expects "
            f"{expected[0]}x{expected[1]}x{channels}"
        )

    perm = row_permutation(k.grid, k.perm_row)
    out = img
    for t in reversed(range(k.iterations)):
        out = run_stage(trace, "rotate", rotate_ccw, out)
        out = run_stage(trace, "block_transform", block_untransform, out, perm)
        out = run_stage(trace, "pad_shuffle", row_unshuffle, out, round_seed(k, t))
        out = run_stage(trace, "threshold", threshold_decrypt, out, k.threshold)
    return run_stage(trace, "pad_shuffle", crop_image, out, width, height)
