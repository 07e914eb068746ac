"""Instantaneous-frequency histograms and KL divergence.

Histograms keep their raw bin counts next to the smoothed probabilities so
that pooling several of them is identical to building one histogram over the
union of their samples.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import rel_entr

from ..demod import DemodTrack
from ..errors import (
    ConfigMismatchError,
    EmptyInputError,
    InputFileError,
    InvalidRangeError,
    NoValidSamplesError,
)

logger = logging.getLogger(__name__)

HISTOGRAM_CSV_HEADER = ("bin_low_hz", "bin_high_hz", "prob")

# Pseudo-count added to every bin before normalizing. A steady tone puts a test
# histogram's mass in one bin; this floor bounds the log penalty the KL sum
# charges a reference for mass in the other bins.
DEFAULT_SMOOTHING_ALPHA = 10.0


@dataclass(frozen=True)
class HistogramConfig:
    """Binning of a frequency axis.

    ``f_max_hz`` of ``None`` means "Nyquist of whatever is being binned";
    :meth:`resolve` fixes it for a sample rate.
    """

    n_bins: int = 128
    f_min_hz: float = 0.0
    f_max_hz: float | None = None
    smoothing_alpha: float = DEFAULT_SMOOTHING_ALPHA

    def __post_init__(self) -> None:
        if self.n_bins < 2:
            raise InvalidRangeError(f"n_bins must be >= 2, got {self.n_bins}")
        if self.f_max_hz is not None and not self.f_min_hz < self.f_max_hz:
            raise InvalidRangeError(f"need f_min < f_max, got ({self.f_min_hz}, {self.f_max_hz})")
        if not self.smoothing_alpha > 0:
            raise InvalidRangeError(f"smoothing_alpha must be positive, got {self.smoothing_alpha}")

    def resolve(self, sample_rate_hz: float) -> HistogramConfig:
        if self.f_max_hz is not None:
            return self
        return replace(self, f_max_hz=float(sample_rate_hz) / 2)

    @property
    def bin_edges(self) -> np.ndarray:
        if self.f_max_hz is None:
            raise InvalidRangeError("histogram config has no f_max_hz; resolve it first")
        return np.linspace(self.f_min_hz, self.f_max_hz, self.n_bins + 1)

    def to_dict(self) -> dict:
        return {
            "n_bins": self.n_bins,
            "f_min_hz": self.f_min_hz,
            "f_max_hz": self.f_max_hz,
            "smoothing_alpha": self.smoothing_alpha,
        }

    @classmethod
    def from_dict(cls, data: dict) -> HistogramConfig:
        return cls(
            n_bins=int(data.get("n_bins", 128)),
            f_min_hz=float(data.get("f_min_hz", 0.0)),
            f_max_hz=None if data.get("f_max_hz") is None else float(data["f_max_hz"]),
            smoothing_alpha=float(data.get("smoothing_alpha", DEFAULT_SMOOTHING_ALPHA)),
        )


@dataclass(frozen=True, eq=False)
class FreqHistogram:
    """Smoothed, normalized probability mass over frequency bins."""

    probs: np.ndarray
    config: HistogramConfig
    sample_count: int
    counts: np.ndarray = field(repr=False)

    @classmethod
    def from_counts(cls, counts, config: HistogramConfig) -> FreqHistogram:
        """Smooth raw bin counts additively and normalize them."""
        counts = np.asarray(counts, dtype=np.float64)
        if counts.shape != (config.n_bins,):
            raise ConfigMismatchError(f"expected {config.n_bins} bin counts, got shape {counts.shape}")
        smoothed = counts + config.smoothing_alpha
        probs = smoothed / smoothed.sum()
        probs.setflags(write=False)
        counts = counts.copy()
        counts.setflags(write=False)
        return cls(probs, config, int(round(counts.sum())), counts)

    @property
    def n_bins(self) -> int:
        return self.config.n_bins


def build_histogram(track: DemodTrack, config: HistogramConfig) -> FreqHistogram:
    """Histogram the valid instantaneous frequencies of a track.

    Out-of-range frequencies are clipped into the edge bins.

    Raises:
        NoValidSamplesError: The track has no valid sample.
    """
    config = config.resolve(track.sample_rate_hz)
    freqs = track.valid_frequencies()
    if freqs.size == 0:
        raise NoValidSamplesError("no valid instantaneous-frequency samples to histogram")

    span = config.f_max_hz - config.f_min_hz
    idx = np.floor((freqs - config.f_min_hz) / span * config.n_bins).astype(np.int64)
    idx = np.clip(idx, 0, config.n_bins - 1)
    counts = np.bincount(idx, minlength=config.n_bins)
    return FreqHistogram.from_counts(counts, config)


def _check_same_config(histograms: Sequence[FreqHistogram]) -> HistogramConfig:
    config = histograms[0].config
    for hist in histograms[1:]:
        if hist.config != config:
            raise ConfigMismatchError(f"histogram configs differ: {hist.config} vs {config}")
    return config


def accumulate(histograms: Sequence[FreqHistogram]) -> FreqHistogram:
    """Pool histograms as if their samples had been binned together.

    Raises:
        EmptyInputError: No histograms given.
        ConfigMismatchError: Configs differ.
    """
    if not histograms:
        raise EmptyInputError("cannot accumulate an empty list of histograms")
    config = _check_same_config(histograms)
    counts = np.sum([hist.counts for hist in histograms], axis=0)
    logger.debug(f"Pooled {len(histograms)} histograms ({int(counts.sum())} samples)")
    return FreqHistogram.from_counts(counts, config)


def kl_divergence(p1: FreqHistogram, p2: FreqHistogram) -> float:
    """KL divergence D(p1 || p2) = sum p1 ln(p1 / p2), in nats."""
    if p1.config != p2.config:
        raise ConfigMismatchError(f"histogram configs differ: {p1.config} vs {p2.config}")
    return float(np.sum(rel_entr(p1.probs, p2.probs)))


def pairwise_divergence(histograms: Sequence[FreqHistogram]) -> np.ndarray:
    """Matrix D[i, j] = kl_divergence(histograms[i], histograms[j])."""
    if not histograms:
        raise EmptyInputError("no histograms to compare")
    _check_same_config(histograms)
    n = len(histograms)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = kl_divergence(histograms[i], histograms[j])
    return out


def write_histogram_csv(path: str | Path, histogram: FreqHistogram) -> None:
    """Write ``bin_low_hz,bin_high_hz,prob`` rows, one per bin."""
    edges = histogram.config.bin_edges
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(HISTOGRAM_CSV_HEADER)
        for low, high, prob in zip(edges[:-1], edges[1:], histogram.probs):
            writer.writerow([repr(float(low)), repr(float(high)), repr(float(prob))])


def read_histogram_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a histogram CSV back as (bin_edges, probs)."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or tuple(rows[0]) != HISTOGRAM_CSV_HEADER:
        raise InputFileError(f"{path}: not a histogram CSV")
    body = np.array([[float(v) for v in row] for row in rows[1:]])
    edges = np.append(body[:, 0], body[-1, 1])
    return edges, body[:, 2]
