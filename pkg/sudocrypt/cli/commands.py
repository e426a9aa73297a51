"""
Command handlers. Each takes the parsed arguments and the loaded config and
returns a process exit code; errors propagate to ``cli.main`` for mapping.
"""

import argparse
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd

from sudocrypt.analysis.bench import run_suite, write_csv
from sudocrypt.analysis.exceptions import DimensionError
from sudocrypt.analysis.metrics import analyze_audio, analyze_images, plaintext_sensitivity
from sudocrypt.ciphers.audio_cipher import decrypt_audio, encrypt_audio
from sudocrypt.ciphers.image_cipher import decrypt_image, seal_image
from sudocrypt.ciphers.models import StageTrace
from sudocrypt.ciphers.video_cipher import decrypt_video, encrypt_video
from sudocrypt.configs.config import Config
from sudocrypt.keys.exceptions import KeyMismatchError
from sudocrypt.keys.keymat import (
    KeyMaterial,
    MediaKind,
    bind_audio_shape,
    bind_video_shape,
    derive_from_timestamp,
    read_key_file,
    write_key_file,
)
from sudocrypt.keys.sudoku import make_puzzle
from sudocrypt.media.exceptions import MediaFormatError, UnsupportedFormatError
from sudocrypt.media.models import AudioClip, Image, VideoSequence
from sudocrypt.media.netpbm import load_image, save_image
from sudocrypt.media.utils import detect_media
from sudocrypt.media.video import read_video, write_video
from sudocrypt.media.wav import load_wav, save_wav
from sudocrypt.utils.logger import log

from .display import (
    display_audio_report,
    display_frame,
    display_grid,
    display_image_reports,
    display_sensitivity,
    display_stage_timings,
    display_step,
)
from .exceptions import UsageError

SUPPORTED_SIZES = (4, 9, 16, 25)

Media = Union[Image, AudioClip, VideoSequence]


def _load_media(path: str) -> Tuple[str, Media]:
    kind = detect_media(path)
    if kind == "image":
        return kind, load_image(path)
    if kind == "audio":
        return kind, load_wav(path)
    if kind == "video":
        return kind, read_video(path)
    raise UnsupportedFormatError(f"Cannot tell the media type of {path}")


def _save_media(path: str, value: Media) -> None:
    if isinstance(value, Image):
        save_image(path, value)
    elif isinstance(value, AudioClip):
        save_wav(path, value)
    else:
        write_video(value, path)


def _media_for(kind: str, key: KeyMaterial, requested: Optional[str]) -> MediaKind:
    if requested is not None:
        media = MediaKind(requested)
        if (kind == "audio") != media.is_audio or (kind == "video") != (media == MediaKind.VIDEO):
            raise UsageError(f"--media {requested} does not fit {kind} input")
        return media
    if kind == "image":
        return MediaKind.IMAGE
    if kind == "video":
        return MediaKind.VIDEO
    return key.media if key.media.is_audio else MediaKind.AUDIO_SHUFFLE


def _check_key_media(kind: str, key: KeyMaterial) -> None:
    expected = {"image": MediaKind.IMAGE, "video": MediaKind.VIDEO}.get(kind)
    fits = key.media.is_audio if kind == "audio" else key.media == expected
    if not fits:
        raise KeyMismatchError(f"Key is for {key.media.value} media, input is {kind}")


def cmd_keygen(args: argparse.Namespace, config: Config) -> int:
    size = args.size if args.size is not None else config.keys.grid_size
    if size not in SUPPORTED_SIZES:
        raise UsageError(f"--size must be one of {', '.join(map(str, SUPPORTED_SIZES))}, got {size}")
    iterations = args.iterations if args.iterations is not None else config.keys.iterations
    if iterations < 1:
        raise UsageError(f"--iterations must be positive, got {iterations}")
    timestamp = args.timestamp if args.timestamp is not None else int(time.time())

    started = time.perf_counter()
    key = derive_from_timestamp(timestamp, size, iterations=iterations, media=MediaKind(args.media))
    seconds = time.perf_counter() - started
    if args.blanks:
        key = replace(key, puzzle=make_puzzle(key.grid, args.blanks, seed=timestamp))

    write_key_file(args.out, key)
    log.info(f"Wrote {size}x{size} key for ts={timestamp} to {args.out}")
    display_grid(
        key.puzzle or key.grid,
        f"{size}x{size} key, ts={timestamp}",
        args.alphabet or config.keys.alphabet,
    )
    display_step("Grid generated", f"{seconds:.4f}s")
    return 0


def cmd_encrypt(args: argparse.Namespace, config: Config) -> int:
    original = read_key_file(args.key)
    kind, value = _load_media(args.input)
    key = original.with_media(_media_for(kind, original, args.media))
    if args.trace and kind != "image":
        raise UsageError("--trace applies to image input only")

    started = time.perf_counter()
    if isinstance(value, Image):
        trace = StageTrace()
        out: Media
        out, key = seal_image(value, key, trace)
        display_stage_timings(trace)
        if args.trace:
            write_csv(trace.to_frame(), args.trace)
    elif isinstance(value, AudioClip):
        key = bind_audio_shape(key, len(value), value.channels, value.sample_rate)
        out = encrypt_audio(value, key)
    else:
        width, height, channels = value.frame_shape
        key = bind_video_shape(
            key, len(value), value.fps_numerator, value.fps_denominator, width, height, channels
        )
        out = encrypt_video(value, key, config.video.max_workers)
    seconds = time.perf_counter() - started

    if args.frozen_key and key != original:
        raise KeyMismatchError("--frozen-key given but the key lacks this input's shape")
    if key != original:
        write_key_file(args.key, key)
        log.info(f"Recorded {key.media.value} shape in {args.key}")
    _save_media(args.output, out)
    display_step("Encrypted", f"{args.input} -> {args.output} ({seconds:.4f}s)")
    return 0


def cmd_decrypt(args: argparse.Namespace, config: Config) -> int:
    key = read_key_file(args.key)
    kind, value = _load_media(args.input)
    _check_key_media(kind, key)

    started = time.perf_counter()
    if isinstance(value, Image):
        out: Media = decrypt_image(value, key)
    elif isinstance(value, AudioClip):
        out = decrypt_audio(value, key)
    else:
        out = decrypt_video(value, key, config.video.max_workers)
    seconds = time.perf_counter() - started

    _save_media(args.output, out)
    display_step("Decrypted", f"{args.input} -> {args.output} ({seconds:.4f}s)")
    return 0


def cmd_analyze(args: argparse.Namespace, config: Config) -> int:
    if args.sensitivity and not args.key:
        raise UsageError("--sensitivity needs --key")
    kind, original = _load_media(args.original)
    other_kind, encrypted = _load_media(args.encrypted)
    if kind != other_kind:
        raise MediaFormatError(f"Cannot compare {kind} with {other_kind}")
    crop = args.crop or config.analysis.crop
    name = Path(args.original).name

    rows: List[dict] = []
    if isinstance(original, Image) and isinstance(encrypted, Image):
        report = analyze_images(original, encrypted, crop)
        display_image_reports([(name, report)])
        rows.append(report.as_row(name))
        if args.sensitivity:
            key = read_key_file(args.key)
            display_sensitivity(plaintext_sensitivity(original, key))
    elif isinstance(original, AudioClip) and isinstance(encrypted, AudioClip):
        audio_report = analyze_audio(original, encrypted)
        display_audio_report(name, audio_report)
        rows.append(audio_report.as_row(name))
    elif isinstance(original, VideoSequence) and isinstance(encrypted, VideoSequence):
        if len(original) != len(encrypted):
            raise DimensionError(f"Videos differ in frame count: {len(original)} vs {len(encrypted)}")
        reports = [
            (f"{name}#{i}", analyze_images(a, b, crop))
            for i, (a, b) in enumerate(zip(original.frames, encrypted.frames))
        ]
        display_image_reports(reports)
        rows.extend(report.as_row(frame) for frame, report in reports)

    if args.csv:
        write_csv(pd.DataFrame(rows), args.csv)
    return 0


def cmd_bench(args: argparse.Namespace, config: Config) -> int:
    frame = run_suite(args.suite, config.bench)
    write_csv(frame, args.out)
    display_frame(frame, f"Bench: {args.suite}")
    return 0
