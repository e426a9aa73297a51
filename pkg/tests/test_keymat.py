"""
Unit tests for key derivation, the key file format and shape binding.
"""

import os
from dataclasses import replace

import pytest

from sudocrypt.keys.exceptions import (
    InvalidArgumentError,
    KeyMismatchError,
    KeyParseError,
    TamperedKeyError,
)
from sudocrypt.keys.keymat import (
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
from sudocrypt.keys.sudoku import make_puzzle

TIMESTAMP = 1_700_000_000

KEY4_TEXT = (
    "SUDOCRYPT-KEY v1\n"
    "timestamp 1700000000\n"
    "media image\n"
    "threshold 99\n"
    "shuffle_seed 12062050396800291869\n"
    "perm_row 0\n"
    "iterations 1\n"
    "dims 0 0 0\n"
    "sudoku n=4\n"
    "1 4 2 3\n"
    "2 3 1 4\n"
    "3 1 4 2\n"
    "4 2 3 1\n"
)


def _lines(k: KeyMaterial) -> list[str]:
    return serialize(k).decode("ascii").split("\n")


def _join(lines: list[str]) -> bytes:
    return "\n".join(lines).encode("ascii")


class TestDerivation:
    """Timestamp key derivation."""

    def test_fields(self, key9):
        assert key9.timestamp == TIMESTAMP
        assert key9.threshold == 99
        assert key9.perm_row == 8
        assert key9.shuffle_seed == 12062050396800291869
        assert key9.iterations == 1
        assert key9.media == MediaKind.IMAGE
        assert key9.grid.is_solved
        assert not key9.has_shape

    def test_threshold_never_zero(self):
        assert derive_from_timestamp(253, 4).threshold == 254
        assert derive_from_timestamp(254, 4).threshold == 1

    def test_deterministic(self):
        assert derive_from_timestamp(42, 9, iterations=3) == derive_from_timestamp(42, 9, iterations=3)

    def test_consecutive_timestamps_give_distinct_keys(self):
        keys = [derive_from_timestamp(ts, 9) for ts in range(TIMESTAMP, TIMESTAMP + 1000)]
        for before, after in zip(keys, keys[1:]):
            assert (before.threshold, before.grid) != (after.threshold, after.grid)
        assert len({(k.threshold, k.grid, k.shuffle_seed, k.perm_row) for k in keys}) == 1000

    @pytest.mark.parametrize("n", [1, 7, 8])
    def test_invalid_size(self, n):
        with pytest.raises(InvalidArgumentError):
            derive_from_timestamp(TIMESTAMP, n)

    def test_invalid_iterations_and_timestamp(self):
        with pytest.raises(InvalidArgumentError):
            derive_from_timestamp(TIMESTAMP, 4, iterations=0)
        with pytest.raises(InvalidArgumentError):
            derive_from_timestamp(-1, 4)


class TestSerialize:
    """Key file rendering and parsing."""

    def test_exact_bytes(self, key4):
        assert serialize(key4) == KEY4_TEXT.encode("ascii")

    def test_parse_golden(self, key4):
        assert parse(KEY4_TEXT.encode("ascii")) == key4

    def test_round_trip_for_every_media(self, key9):
        keys = [
            bind_image_shape(key9, 97, 53, 1),
            bind_audio_shape(key9.with_media(MediaKind.AUDIO_SHUFFLE), 20, 2, 44100),
            bind_audio_shape(key9.with_media(MediaKind.AUDIO_XOR), 132300, 1, 22050),
            bind_video_shape(key9.with_media(MediaKind.VIDEO), 10, 30000, 1001, 96, 96, 3),
        ]
        for k in keys:
            assert parse(serialize(k)) == k

    def test_shape_lines(self, key4):
        assert _lines(bind_image_shape(key4, 5, 6, 3))[7] == "dims 5 6 3"
        audio = bind_audio_shape(key4.with_media(MediaKind.AUDIO_XOR), 20, 1, 8000)
        assert _lines(audio)[7] == "samples 20 1 8000"
        video = key4.with_media(MediaKind.VIDEO)
        assert _lines(video)[7] == "frames 0 0 0 0 0 0"

    def test_puzzle_key_round_trip(self, key9):
        puzzle = make_puzzle(key9.grid, 25, seed=TIMESTAMP)
        k = replace(key9, puzzle=puzzle)
        data = serialize(k)
        grid_tokens = " ".join(data.decode("ascii").split("\n")[9:]).split()
        assert grid_tokens.count("0") == 25
        parsed = parse(data)
        assert parsed.grid == key9.grid
        assert parsed.puzzle == puzzle
        assert serialize(parsed) == data


class TestParseErrors:
    """Malformed key files are reported with their line."""

    def test_empty(self):
        with pytest.raises(KeyParseError) as info:
            parse(b"")
        assert info.value.line == 1

    def test_bad_magic(self):
        with pytest.raises(KeyParseError) as info:
            parse(KEY4_TEXT.replace("v1", "v2").encode("ascii"))
        assert info.value.line == 1

    def test_crlf_rejected(self):
        with pytest.raises(KeyParseError):
            parse(KEY4_TEXT.replace("\n", "\r\n").encode("ascii"))

    def test_non_ascii_rejected(self):
        with pytest.raises(KeyParseError):
            parse(KEY4_TEXT.replace("image", "imagé").encode("utf-8"))

    def test_truncated(self):
        with pytest.raises(KeyParseError):
            parse("\n".join(KEY4_TEXT.split("\n")[:6]).encode("ascii"))
        with pytest.raises(KeyParseError):
            parse("\n".join(KEY4_TEXT.split("\n")[:11]).encode("ascii"))

    def test_non_numeric_field(self, key4):
        lines = _lines(key4)
        lines[3] = "threshold ninety"
        with pytest.raises(KeyParseError) as info:
            parse(_join(lines))
        assert info.value.line == 4

    def test_unknown_media(self, key4):
        lines = _lines(key4)
        lines[2] = "media hologram"
        with pytest.raises(KeyParseError) as info:
            parse(_join(lines))
        assert info.value.line == 3

    def test_wrong_shape_keyword(self, key4):
        lines = _lines(key4)
        lines[7] = "samples 0 0 0"
        with pytest.raises(KeyParseError) as info:
            parse(_join(lines))
        assert info.value.line == 8


class TestTamperDetection:
    """Invariant violations raise TamperedKeyError."""

    def test_single_cell_corruptions(self, key9, rng):
        lines = _lines(key9)
        for _ in range(60):
            r, c = (int(v) for v in rng.integers(0, 9, size=2))
            row = lines[9 + r].split(" ")
            current = int(row[c])
            row[c] = str((current + int(rng.integers(1, 9)) - 1) % 9 + 1)
            corrupted = lines.copy()
            corrupted[9 + r] = " ".join(row)
            with pytest.raises(TamperedKeyError):
                parse(_join(corrupted))

    def test_cell_out_of_range(self, key9):
        lines = _lines(key9)
        lines[9] = lines[9].replace(lines[9].split(" ")[0], "10", 1)
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    @pytest.mark.parametrize("threshold", ["0", "256"])
    def test_threshold_out_of_range(self, key4, threshold):
        lines = _lines(key4)
        lines[3] = f"threshold {threshold}"
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_perm_row_out_of_range(self, key4):
        lines = _lines(key4)
        lines[5] = "perm_row 4"
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_zero_iterations(self, key4):
        lines = _lines(key4)
        lines[6] = "iterations 0"
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_seed_outside_64_bits(self, key4):
        lines = _lines(key4)
        lines[4] = f"shuffle_seed {1 << 64}"
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_unsolvable_puzzle(self, key4):
        lines = _lines(key4)
        lines[9:13] = ["0 2 3 0", "0 1 0 0", "4 0 0 0", "0 0 0 0"]
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_one_cell_grid_rejected(self, key4):
        lines = _lines(key4)
        lines[5] = "perm_row 0"
        lines[8:13] = ["sudoku n=1", "1"]
        with pytest.raises(TamperedKeyError):
            parse(_join(lines))

    def test_partial_shape(self, key4):
        with pytest.raises(TamperedKeyError):
            replace(key4, original_width=5)


class TestShapeBinding:
    """Recording plaintext shape in the key."""

    def test_bind_image(self, key4):
        bound = bind_image_shape(key4, 97, 53, 3)
        assert bound.image_shape == (97, 53, 3)
        assert bind_image_shape(bound, 97, 53, 3) is bound

    def test_rebind_mismatch(self, key4):
        bound = bind_image_shape(key4, 97, 53, 3)
        with pytest.raises(KeyMismatchError):
            bind_image_shape(bound, 53, 97, 3)

    def test_wrong_media(self, key4):
        with pytest.raises(KeyMismatchError):
            bind_audio_shape(key4, 100, 1, 8000)
        with pytest.raises(KeyMismatchError):
            bind_video_shape(key4, 1, 1, 1, 4, 4, 1)

    def test_audio_rebind_mismatch(self, key4):
        audio = bind_audio_shape(key4.with_media(MediaKind.AUDIO_SHUFFLE), 100, 1, 8000)
        with pytest.raises(KeyMismatchError):
            bind_audio_shape(audio, 101, 1, 8000)

    def test_with_media(self, key4):
        assert key4.with_media(MediaKind.AUDIO_XOR).media == MediaKind.AUDIO_XOR
        bound = bind_image_shape(key4, 4, 4, 1)
        with pytest.raises(KeyMismatchError):
            bound.with_media(MediaKind.AUDIO_XOR)


class TestKeyFiles:
    """Atomic key file helpers."""

    def test_write_and_read(self, key9, tmp_path):
        path = tmp_path / "session.key"
        write_key_file(path, key9)
        assert read_key_file(path) == key9
        assert os.listdir(tmp_path) == ["session.key"]

    def test_overwrite_in_place(self, key4, tmp_path):
        path = tmp_path / "session.key"
        write_key_file(path, key4)
        write_key_file(path, bind_image_shape(key4, 8, 8, 1))
        assert read_key_file(path).image_shape == (8, 8, 1)
