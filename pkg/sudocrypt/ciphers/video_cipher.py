"""
Per-frame video cipher. Every frame goes through the image cipher under the
same key; frames are independent jobs reassembled in index order.
"""

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Optional

from sudocrypt.keys.exceptions import KeyMismatchError
from sudocrypt.keys.keymat import KeyMaterial, MediaKind
from sudocrypt.media.models import Image, VideoSequence
from sudocrypt.utils.logger import log

from .image_cipher import decrypt_image, encrypt_image
from .models import FrameJob


def _check_key(v: VideoSequence, k: KeyMaterial) -> None:
    if k.media != MediaKind.VIDEO:
        raise KeyMismatchError(f"Key is for {k.media.value} media, not video")
    if not k.has_shape:
        return
    if k.frame_count != len(v):
        raise KeyMismatchError(f"Video has {len(v)} frames, key expects {k.frame_count}")


def _run_jobs(
    frames: List[Image],
    transform: Callable[[Image], Image],
    max_workers: Optional[int],
) -> List[FrameJob]:
    jobs = [FrameJob(index=i, input=frame) for i, frame in enumerate(frames)]

    def _process(job: FrameJob) -> FrameJob:
        started = time.perf_counter()
        job.output = transform(job.input)
        job.duration_ms = (time.perf_counter() - started) * 1000.0
        return job

    if len(jobs) <= 1 or max_workers == 1:
        return [_process(job) for job in jobs]

    done: Dict[int, FrameJob] = {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = [executor.submit(_process, job) for job in jobs]
        for future in as_completed(futures):
            job = future.result()
            done[job.index] = job

    # Reassemble in order
    return [done[i] for i in range(len(jobs))]


def _assemble(v: VideoSequence, jobs: List[FrameJob], action: str) -> VideoSequence:
    total_ms = sum(job.duration_ms for job in jobs)
    log.debug(f"{action} {len(jobs)} frames, {total_ms:.1f} ms of frame work")
    return VideoSequence(
        fps_numerator=v.fps_numerator,
        fps_denominator=v.fps_denominator,
        frames=[job.output for job in jobs if job.output is not None],
    )


def encrypt_video(
    v: VideoSequence, k: KeyMaterial, max_workers: Optional[int] = None
) -> VideoSequence:
    """Encrypt every frame with ``encrypt_image``; fps and frame order are kept.

    Bind the frame count and shape with ``keymat.bind_video_shape`` before
    persisting the key.
    """
    _check_key(v, k)
    jobs = _run_jobs(v.frames, lambda frame: encrypt_image(frame, k), max_workers)
    return _assemble(v, jobs, "Encrypted")


def decrypt_video(
    v: VideoSequence, k: KeyMaterial, max_workers: Optional[int] = None
) -> VideoSequence:
    if k.media == MediaKind.VIDEO and not k.has_shape:
        raise KeyMismatchError("Key carries no video shape; encrypt with it first")
    _check_key(v, k)
    jobs = _run_jobs(v.frames, lambda frame: decrypt_image(frame, k), max_workers)
    return _assemble(v, jobs, "Decrypted")
