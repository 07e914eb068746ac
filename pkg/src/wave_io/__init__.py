"""Audio and label ingestion.

Usage:
    from src.wave_io import read_wav, parse_labels, extract_segments

    signal = read_wav("song.wav")
    labels = parse_labels("song.csv")
    segments = extract_segments(signal, labels, segment_len_s=2.0)
"""

from .labels import parse_labels, write_labels
from .segments import DEFAULT_MIN_TAIL_S, DEFAULT_SEGMENT_LEN_S, extract_segments, grid_segments
from .types import LabeledSegment, SampledSignal, SegmentLabel, Tag
from .wavfile import read_wav, write_wav

__all__ = [
    # Types
    "SampledSignal",
    "SegmentLabel",
    "LabeledSegment",
    "Tag",
    # WAV
    "read_wav",
    "write_wav",
    # Labels
    "parse_labels",
    "write_labels",
    # Segments
    "extract_segments",
    "grid_segments",
    "DEFAULT_SEGMENT_LEN_S",
    "DEFAULT_MIN_TAIL_S",
]
