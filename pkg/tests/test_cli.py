"""
End-to-end tests for the sudocrypt command line.
"""

import numpy as np
import pandas as pd
import pytest

from sudocrypt.cli.main import EXIT_FORMAT, EXIT_KEY, EXIT_OK, EXIT_USAGE, main
from sudocrypt.keys.keymat import MediaKind, derive_from_timestamp, read_key_file
from sudocrypt.media.netpbm import load_image, save_image
from sudocrypt.media.video import read_video, write_video
from sudocrypt.media.wav import load_wav, save_wav

TIMESTAMP = "1700000000"


@pytest.fixture
def key_path(tmp_path):
    path = tmp_path / "session.key"
    assert main(["keygen", "--size", "9", "--timestamp", TIMESTAMP, "--out", str(path)]) == EXIT_OK
    return path


@pytest.fixture
def image_path(tmp_path, odd_gray):
    path = tmp_path / "plain.pgm"
    save_image(path, odd_gray)
    return path


class TestKeygen:
    """keygen subcommand."""

    def test_writes_timestamp_key(self, key_path):
        assert read_key_file(key_path) == derive_from_timestamp(1_700_000_000, 9)

    def test_deterministic(self, tmp_path, key_path):
        again = tmp_path / "again.key"
        main(["keygen", "--size", "9", "--timestamp", TIMESTAMP, "--out", str(again)])
        assert again.read_bytes() == key_path.read_bytes()

    def test_puzzle_and_media(self, tmp_path):
        path = tmp_path / "audio.key"
        argv = ["keygen", "--size", "4", "--timestamp", TIMESTAMP, "--media", "audio-xor"]
        assert main(argv + ["--blanks", "3", "--out", str(path)]) == EXIT_OK
        key = read_key_file(path)
        assert key.media == MediaKind.AUDIO_XOR
        assert key.puzzle is not None and key.puzzle.empty_cells() == 3

    @pytest.mark.parametrize("size", ["7", "36"])
    def test_unsupported_size(self, tmp_path, size):
        argv = ["keygen", "--size", size, "--out", str(tmp_path / "k")]
        assert main(argv) == EXIT_USAGE
        assert not (tmp_path / "k").exists()

    def test_usage_errors(self, tmp_path):
        assert main(["keygen"]) == EXIT_USAGE
        assert main(["shuffle"]) == EXIT_USAGE
        assert main(["keygen", "--size", "nine", "--out", str(tmp_path / "k")]) == EXIT_USAGE

    def test_largest_grid(self, tmp_path):
        out = tmp_path / "k25"
        assert main(["keygen", "--size", "25", "--timestamp", TIMESTAMP, "--out", str(out)]) == EXIT_OK
        key = read_key_file(out)
        assert key.n == 25 and key.grid.is_solved

    def test_help(self):
        assert main(["--help"]) == EXIT_OK

    def test_grid_size_from_config(self, tmp_path):
        config = tmp_path / "config.yaml"
        config.write_text("keys:\n  grid_size: 4\n")
        out = tmp_path / "k"
        assert main(["--config", str(config), "keygen", "--timestamp", "5", "--out", str(out)]) == EXIT_OK
        assert read_key_file(out).n == 4


class TestImageRoundTrip:
    """encrypt and decrypt on netpbm files."""

    def test_round_trip_records_shape(self, tmp_path, key_path, image_path, odd_gray):
        cipher = tmp_path / "cipher.pgm"
        plain = tmp_path / "restored.pgm"
        assert main(["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(cipher)]) == EXIT_OK
        assert read_key_file(key_path).image_shape == (97, 53, 1)
        assert load_image(cipher).shape == (54, 99, 1)

        assert main(["decrypt", "--in", str(cipher), "--key", str(key_path), "--out", str(plain)]) == EXIT_OK
        assert load_image(plain) == odd_gray

    def test_key_recorded_before_ciphertext(self, tmp_path, key_path, image_path):
        blocked = tmp_path / "blocked.pgm"
        blocked.mkdir()
        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(blocked)]
        assert main(argv) == EXIT_FORMAT
        assert read_key_file(key_path).image_shape == (97, 53, 1)

    def test_reencrypt_same_shape_keeps_key(self, tmp_path, key_path, image_path):
        cipher = tmp_path / "cipher.pgm"
        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(cipher)]
        main(argv)
        recorded = key_path.read_bytes()
        assert main(argv + ["--frozen-key"]) == EXIT_OK
        assert key_path.read_bytes() == recorded

    def test_frozen_key_without_shape(self, tmp_path, key_path, image_path):
        cipher = tmp_path / "cipher.pgm"
        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(cipher), "--frozen-key"]
        assert main(argv) == EXIT_KEY
        assert not cipher.exists()

    def test_shape_mismatch(self, tmp_path, key_path, image_path, rgb_image):
        main(["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(tmp_path / "c.pgm")])
        other = tmp_path / "other.ppm"
        save_image(other, rgb_image)
        assert main(["encrypt", "--in", str(other), "--key", str(key_path), "--out", str(tmp_path / "d.ppm")]) == EXIT_KEY

    def test_trace_csv(self, tmp_path, key_path, image_path):
        trace = tmp_path / "trace.csv"
        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(tmp_path / "c.pgm")]
        assert main(argv + ["--trace", str(trace)]) == EXIT_OK
        frame = pd.read_csv(trace)
        assert frame["stage"].tolist() == ["threshold", "pad_shuffle", "block_transform", "rotate"]

    def test_decrypt_with_unbound_key(self, tmp_path, key_path, image_path):
        argv = ["decrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(tmp_path / "p.pgm")]
        assert main(argv) == EXIT_KEY


class TestErrors:
    """Exit codes for bad keys and bad media."""

    def test_corrupted_key(self, tmp_path, key_path, image_path, capsys):
        lines = key_path.read_text().split("\n")
        row = lines[9].split(" ")
        row[0], row[1] = row[1], row[0]
        lines[9] = " ".join(row)
        key_path.write_text("\n".join(lines))

        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(tmp_path / "c.pgm")]
        assert main(argv) == EXIT_KEY
        assert "key validation failed" in capsys.readouterr().out

    def test_garbage_key(self, tmp_path, image_path):
        key = tmp_path / "garbage.key"
        key.write_bytes(b"not a key\n")
        argv = ["encrypt", "--in", str(image_path), "--key", str(key), "--out", str(tmp_path / "c.pgm")]
        assert main(argv) == EXIT_KEY

    def test_malformed_image(self, tmp_path, key_path):
        bad = tmp_path / "bad.ppm"
        bad.write_bytes(b"P3\n1 1\n255\n0 0 0\n")
        argv = ["encrypt", "--in", str(bad), "--key", str(key_path), "--out", str(tmp_path / "c.ppm")]
        assert main(argv) == EXIT_FORMAT

    def test_unknown_media_type(self, tmp_path, key_path):
        clip = tmp_path / "clip.mp4"
        clip.write_bytes(b"\x00" * 16)
        argv = ["encrypt", "--in", str(clip), "--key", str(key_path), "--out", str(tmp_path / "c.mp4")]
        assert main(argv) == EXIT_FORMAT

    def test_missing_input(self, tmp_path, key_path):
        argv = ["encrypt", "--in", str(tmp_path / "absent.pgm"), "--key", str(key_path), "--out", str(tmp_path / "c.pgm")]
        assert main(argv) == EXIT_FORMAT

    def test_media_flag_must_fit_input(self, tmp_path, key_path, image_path):
        argv = ["encrypt", "--in", str(image_path), "--key", str(key_path), "--out", str(tmp_path / "c.pgm")]
        assert main(argv + ["--media", "audio-xor"]) == EXIT_USAGE


class TestAudioAndVideo:
    """WAV and frame-directory round trips."""

    @pytest.mark.parametrize("media", ["audio-shuffle", "audio-xor"])
    def test_audio_round_trip(self, tmp_path, key_path, stereo_clip, media):
        plain = tmp_path / "plain.wav"
        cipher = tmp_path / "cipher.wav"
        restored = tmp_path / "restored.wav"
        save_wav(plain, stereo_clip)

        argv = ["encrypt", "--in", str(plain), "--key", str(key_path), "--out", str(cipher)]
        assert main(argv + ["--media", media]) == EXIT_OK
        assert read_key_file(key_path).media == MediaKind(media)
        assert main(["decrypt", "--in", str(cipher), "--key", str(key_path), "--out", str(restored)]) == EXIT_OK
        assert load_wav(restored) == stereo_clip

    def test_audio_defaults_to_shuffle(self, tmp_path, key_path, mono_clip):
        plain = tmp_path / "plain.wav"
        save_wav(plain, mono_clip)
        main(["encrypt", "--in", str(plain), "--key", str(key_path), "--out", str(tmp_path / "c.wav")])
        assert read_key_file(key_path).media == MediaKind.AUDIO_SHUFFLE

    def test_trace_rejected_for_audio(self, tmp_path, key_path, mono_clip):
        plain = tmp_path / "plain.wav"
        save_wav(plain, mono_clip)
        argv = ["encrypt", "--in", str(plain), "--key", str(key_path), "--out", str(tmp_path / "c.wav")]
        assert main(argv + ["--trace", str(tmp_path / "t.csv")]) == EXIT_USAGE

    def test_video_round_trip(self, tmp_path, key_path, video):
        plain = tmp_path / "plain"
        cipher = tmp_path / "cipher"
        restored = tmp_path / "restored"
        write_video(video, plain)

        assert main(["encrypt", "--in", str(plain), "--key", str(key_path), "--out", str(cipher)]) == EXIT_OK
        key = read_key_file(key_path)
        assert key.media == MediaKind.VIDEO and key.frame_count == 5
        assert main(["decrypt", "--in", str(cipher), "--key", str(key_path), "--out", str(restored)]) == EXIT_OK
        assert read_video(restored) == video


class TestAnalyze:
    """analyze subcommand."""

    def _encrypt(self, tmp_path, key_path, source):
        cipher = tmp_path / f"cipher{source.suffix}"
        main(["encrypt", "--in", str(source), "--key", str(key_path), "--out", str(cipher)])
        return cipher

    def test_image_csv(self, tmp_path, key_path, image_path):
        cipher = self._encrypt(tmp_path, key_path, image_path)
        report = tmp_path / "report.csv"
        argv = ["analyze", "--original", str(image_path), "--encrypted", str(cipher), "--crop", "--csv", str(report)]
        assert main(argv) == EXIT_OK
        frame = pd.read_csv(report)
        assert frame["image"].tolist() == ["plain.pgm"]
        assert bool(frame["cropped"].iloc[0])
        assert 0.0 <= frame["npcr"].iloc[0] <= 100.0

    def test_shape_mismatch_without_crop(self, tmp_path, key_path, image_path):
        cipher = self._encrypt(tmp_path, key_path, image_path)
        assert main(["analyze", "--original", str(image_path), "--encrypted", str(cipher)]) == EXIT_FORMAT

    def test_media_mismatch(self, tmp_path, image_path, mono_clip):
        clip = tmp_path / "clip.wav"
        save_wav(clip, mono_clip)
        assert main(["analyze", "--original", str(image_path), "--encrypted", str(clip)]) == EXIT_FORMAT

    def test_sensitivity(self, tmp_path, key_path, rgb_image, capsys):
        source = tmp_path / "plain.ppm"
        save_image(source, rgb_image)
        cipher = self._encrypt(tmp_path, key_path, source)
        argv = ["analyze", "--original", str(source), "--encrypted", str(cipher)]
        assert main(argv + ["--sensitivity"]) == EXIT_USAGE
        assert main(argv + ["--crop", "--sensitivity", "--key", str(key_path)]) == EXIT_OK
        assert "NPCR" in capsys.readouterr().out

    def test_audio(self, tmp_path, key_path, sine_clip):
        source = tmp_path / "tone.wav"
        save_wav(source, sine_clip)
        cipher = self._encrypt(tmp_path, key_path, source)
        report = tmp_path / "audio.csv"
        argv = ["analyze", "--original", str(source), "--encrypted", str(cipher), "--csv", str(report)]
        assert main(argv) == EXIT_OK
        assert pd.read_csv(report)["clip"].tolist() == ["tone.wav"]

    def test_video_per_frame(self, tmp_path, key_path, video):
        source = tmp_path / "frames"
        write_video(video, source)
        cipher = tmp_path / "cipher-frames"
        main(["encrypt", "--in", str(source), "--key", str(key_path), "--out", str(cipher)])
        report = tmp_path / "video.csv"
        argv = ["analyze", "--original", str(source), "--encrypted", str(cipher), "--crop", "--csv", str(report)]
        assert main(argv) == EXIT_OK
        assert pd.read_csv(report)["image"].tolist() == [f"frames#{i}" for i in range(5)]


class TestBench:
    """bench subcommand."""

    @pytest.fixture
    def small_config(self, tmp_path):
        path = tmp_path / "bench.yaml"
        path.write_text(
            "bench:\n"
            "  key_counts: [1, 2]\n"
            "  iteration_counts: [1, 2]\n"
            "  sudoku_sizes: [4, 9]\n"
            "  grid_size: 4\n"
            "  image_size: 16\n"
        )
        return path

    @pytest.mark.parametrize(
        "suite, columns, rows",
        [
            ("keygen", ["keys", "seconds"], 2),
            ("iterations", ["iterations", "seconds"], 2),
            ("sudoku-sizes", ["size", "seconds"], 2),
            ("images", ["image", "resolution", "sudoku", "seconds"], 3),
        ],
    )
    def test_suites(self, tmp_path, small_config, suite, columns, rows):
        out = tmp_path / f"{suite}.csv"
        assert main(["--config", str(small_config), "bench", "--suite", suite, "--out", str(out)]) == EXIT_OK
        frame = pd.read_csv(out)
        assert list(frame.columns) == columns
        assert len(frame) == rows
        assert np.all(frame["seconds"] >= 0.0)

    def test_unknown_suite(self, tmp_path):
        assert main(["bench", "--suite", "gpu", "--out", str(tmp_path / "x.csv")]) == EXIT_USAGE

