"""Signal and label value types shared across modsep."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import InvalidParamsError


class Tag(str, Enum):
    """Segment class. Values are the characters used in label files."""

    VOICE = "V"
    MUSIC = "M"

    @property
    def display_name(self) -> str:
        return "Voice" if self is Tag.VOICE else "Music"


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Real-valued samples with their sample rate.

    The sample array is stored as a read-only float64 copy so instances can be
    shared freely between threads.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        if not self.sample_rate_hz > 0:
            raise InvalidParamsError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        if not np.all(np.isfinite(samples)):
            raise InvalidParamsError("samples must be finite (no NaN/Inf)")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    @property
    def nyquist_hz(self) -> float:
        return self.sample_rate_hz / 2.0

    def scaled(self, factor: float) -> SampledSignal:
        """Return a copy with every sample multiplied by ``factor``."""
        return SampledSignal(self.samples * factor, self.sample_rate_hz)


@dataclass(frozen=True)
class SegmentLabel:
    """A tagged time interval from a label file."""

    start_s: float
    end_s: float
    tag: Tag

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s


@dataclass(frozen=True, eq=False)
class LabeledSegment:
    """A fixed-length slice of a source signal.

    ``tag`` is ``None`` for segments cut on an unlabeled grid (classification
    of unknown audio).
    """

    signal: SampledSignal
    tag: Tag | None
    source_id: str
    start_s: float

    @property
    def segment_id(self) -> str:
        return f"{self.source_id}@{self.start_s:.3f}"

    def scaled(self, factor: float) -> LabeledSegment:
        return LabeledSegment(self.signal.scaled(factor), self.tag, self.source_id, self.start_s)
