"""Cutting signals into fixed-length classification segments."""

import logging
from typing import Sequence

from ..errors import LabelBeyondSignalError, UsageError
from .types import LabeledSegment, SampledSignal, SegmentLabel

logger = logging.getLogger(__name__)

DEFAULT_SEGMENT_LEN_S = 2.0
DEFAULT_MIN_TAIL_S = 0.5


def _window_samples(signal: SampledSignal, segment_len_s: float) -> int:
    if not segment_len_s > 0:
        raise UsageError(f"segment_len_s must be positive, got {segment_len_s}")
    n_window = int(round(segment_len_s * signal.sample_rate_hz))
    if n_window < 1:
        raise UsageError(f"segment_len_s {segment_len_s} is shorter than one sample")
    return n_window


def _cut(
    signal: SampledSignal,
    start_idx: int,
    end_idx: int,
    n_window: int,
    tag,
    source_id: str,
) -> list[LabeledSegment]:
    segments = []
    pos = start_idx
    while pos + n_window <= end_idx:
        piece = SampledSignal(signal.samples[pos : pos + n_window], signal.sample_rate_hz)
        segments.append(LabeledSegment(piece, tag, source_id, pos / signal.sample_rate_hz))
        pos += n_window
    return segments


def extract_segments(
    signal: SampledSignal,
    labels: Sequence[SegmentLabel],
    segment_len_s: float = DEFAULT_SEGMENT_LEN_S,
    min_tail_s: float = DEFAULT_MIN_TAIL_S,
    source_id: str = "",
) -> list[LabeledSegment]:
    """Split each labeled region into consecutive full windows.

    Every emitted segment has exactly ``round(segment_len_s * fs)`` samples and
    inherits its region's tag. Any remainder shorter than a full window is
    dropped; ``min_tail_s`` only decides whether the drop is logged as
    noteworthy.

    Raises:
        LabelBeyondSignalError: A label ends after the signal does.
    """
    n_window = _window_samples(signal, segment_len_s)
    fs = signal.sample_rate_hz
    # Half a sample of slack for labels written with rounded times
    limit_s = signal.duration_s + 0.5 / fs

    segments: list[LabeledSegment] = []
    for label in labels:
        if label.end_s > limit_s:
            raise LabelBeyondSignalError(
                f"{source_id or 'signal'}: label {label.start_s}-{label.end_s} s "
                f"exceeds signal duration {signal.duration_s:.3f} s"
            )
        start_idx = int(round(label.start_s * fs))
        end_idx = min(int(round(label.end_s * fs)), len(signal))
        region = _cut(signal, start_idx, end_idx, n_window, label.tag, source_id)
        segments.extend(region)

        tail_s = (end_idx - start_idx - len(region) * n_window) / fs
        if tail_s >= min_tail_s:
            logger.debug(f"{source_id}: dropping {tail_s:.3f} s partial window at {label.end_s} s")

    logger.debug(f"{source_id}: {len(segments)} segments from {len(labels)} labels")
    return segments


def grid_segments(
    signal: SampledSignal,
    segment_len_s: float = DEFAULT_SEGMENT_LEN_S,
    source_id: str = "",
) -> list[LabeledSegment]:
    """Cut an unlabeled signal on a non-overlapping grid (segments carry no tag)."""
    n_window = _window_samples(signal, segment_len_s)
    return _cut(signal, 0, len(signal), n_window, None, source_id)
