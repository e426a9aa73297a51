"""
Audio cipher over the flat interleaved 16-bit sample stream.

Two modes share the key schema:

* shuffle: every full block of n samples is permuted by the key's Sudoku row;
  the trailing partial block is copied unchanged.
* xor: samples are zero-padded, laid out as rows of n, XORed with the grid
  tiled over the matrix, then the matrix is transposed and flattened.
"""

from typing import Optional, Tuple

import numpy as np

from sudocrypt.keys.exceptions import InvalidKeyError, KeyMismatchError
from sudocrypt.keys.keymat import KeyMaterial, MediaKind
from sudocrypt.keys.prng import Permutation, invert_permutation
from sudocrypt.keys.sudoku import SudokuGrid, row_permutation
from sudocrypt.media.models import AudioClip
from sudocrypt.utils.logger import log

from .models import BlockLayout


def _permute_blocks(a: AudioClip, index: np.ndarray) -> AudioClip:
    n = len(index)
    full = (len(a) // n) * n
    out = a.samples.copy()
    out[:full] = a.samples[:full].reshape(-1, n)[:, index].reshape(-1)
    return a.with_samples(out)


def shuffle_encrypt(a: AudioClip, perm: Permutation) -> AudioClip:
    """out[start + j] = in[start + perm.map[j]] for each full block."""
    return _permute_blocks(a, perm.as_array())


def shuffle_decrypt(a: AudioClip, perm: Permutation) -> AudioClip:
    return _permute_blocks(a, invert_permutation(perm).as_array())


def _grid_mask(g: SudokuGrid, rows: int) -> np.ndarray:
    if not g.is_solved:
        raise InvalidKeyError("XOR mask needs a solved Sudoku grid")
    reps = -(-rows // g.n)
    # element (i, j) pairs with cell (i mod n, j)
    return np.tile(g.to_array().astype(np.uint16), (reps, 1))[:rows]


def xor_encrypt(a: AudioClip, g: SudokuGrid) -> Tuple[AudioClip, BlockLayout]:
    layout = BlockLayout.for_length(len(a), g.n, a.channels)
    padded = np.zeros(layout.padded_length, dtype=np.uint16)
    padded[: len(a)] = a.samples.view(np.uint16)

    matrix = padded.reshape(layout.num_rows, g.n) ^ _grid_mask(g, layout.num_rows)
    out = matrix.T.reshape(-1).view(np.int16)
    return a.with_samples(out), layout


def xor_decrypt(a: AudioClip, g: SudokuGrid, layout: BlockLayout) -> AudioClip:
    if len(a) != layout.padded_length:
        raise KeyMismatchError(
            f"Ciphertext has {len(a)} samples, key expects {layout.padded_length}"
        )
    matrix = a.samples.view(np.uint16).reshape(g.n, layout.num_rows).T
    plain = (matrix ^ _grid_mask(g, layout.num_rows)).reshape(-1)
    return a.with_samples(plain[: layout.original_length].view(np.int16))


def _check_media(k: KeyMaterial) -> None:
    if not k.media.is_audio:
        raise KeyMismatchError(f"Key is for {k.media.value} media, not audio")


def encrypt_audio(a: AudioClip, k: KeyMaterial) -> AudioClip:
    """Encrypt with the mode named by ``k.media``; iterations do not apply to audio."""
    _check_media(k)
    if k.has_shape and (k.original_length, k.channels, k.sample_rate) != (
        len(a),
        a.channels,
        a.sample_rate,
    ):
        raise KeyMismatchError(
            f"Key is bound to {k.original_length} samples x{k.channels} @ "
            f"{k.sample_rate} Hz, input is {len(a)} x{a.channels} @ {a.sample_rate} Hz"
        )

    if k.media == MediaKind.AUDIO_SHUFFLE:
        out = shuffle_encrypt(a, row_permutation(k.grid, k.perm_row))
    else:
        out, layout = xor_encrypt(a, k.grid)
        log.debug(f"Padded {len(a)} samples to {layout.padded_length} for XOR mode")
    return out


def audio_layout(k: KeyMaterial) -> Optional[BlockLayout]:
    if not k.has_shape or not k.media.is_audio:
        return None
    return BlockLayout.for_length(k.original_length, k.n, k.channels)


def decrypt_audio(a: AudioClip, k: KeyMaterial) -> AudioClip:
    _check_media(k)
    layout = audio_layout(k)
    if layout is None:
        raise KeyMismatchError("Key carries no audio shape; encrypt with it first")
    if a.channels != k.channels:
        raise KeyMismatchError(f"Ciphertext has {a.channels} channels, key expects {k.channels}")

    if k.media == MediaKind.AUDIO_SHUFFLE:
        if len(a) != k.original_length:
            raise KeyMismatchError(
                f"Ciphertext has {len(a)} samples, key expects {k.original_length}"
            )
        return shuffle_decrypt(a, row_permutation(k.grid, k.perm_row))
    return xor_decrypt(a, k.grid, layout)
