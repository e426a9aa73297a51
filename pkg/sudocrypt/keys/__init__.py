"""
Key package: SplitMix64 permutations, Sudoku grids and key files.
"""

from .exceptions import (
    InvalidArgumentError,
    InvalidKeyError,
    KeyMismatchError,
    KeyParseError,
    SudokuKeyError,
    TamperedKeyError,
)
from .keymat import (
    KeyMaterial,
    MediaKind,
    bind_audio_shape,
    bind_image_shape,
    bind_video_shape,
    derive_from_timestamp,
    parse,
    read_key_file,
    serialize,
    write_key_file,
)
from .prng import (
    Permutation,
    PrngState,
    derive_permutation,
    invert_permutation,
    mix_seed,
    next_u64,
)
from .sudoku import (
    SudokuGrid,
    count_solutions,
    format_grid,
    generate,
    generate_with_stats,
    make_puzzle,
    parse_grid,
    render_grid,
    row_permutation,
    solve,
    validate,
)

__all__ = [
    # PRNG
    "PrngState",
    "Permutation",
    "next_u64",
    "mix_seed",
    "derive_permutation",
    "invert_permutation",
    # Sudoku
    "SudokuGrid",
    "generate",
    "generate_with_stats",
    "validate",
    "solve",
    "count_solutions",
    "row_permutation",
    "make_puzzle",
    "format_grid",
    "parse_grid",
    "render_grid",
    # Key material
    "KeyMaterial",
    "MediaKind",
    "derive_from_timestamp",
    "serialize",
    "parse",
    "bind_image_shape",
    "bind_audio_shape",
    "bind_video_shape",
    "read_key_file",
    "write_key_file",
    # Exceptions
    "SudokuKeyError",
    "InvalidArgumentError",
    "InvalidKeyError",
    "KeyParseError",
    "TamperedKeyError",
    "KeyMismatchError",
]
