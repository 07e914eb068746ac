"""Frequency histograms and KL divergence.

Usage:
    from src.features import HistogramConfig, build_histogram, kl_divergence

    hist = build_histogram(track, HistogramConfig(n_bins=128))
    distance = kl_divergence(reference, hist)
"""

from .histogram import (
    HISTOGRAM_CSV_HEADER,
    FreqHistogram,
    HistogramConfig,
    accumulate,
    build_histogram,
    kl_divergence,
    pairwise_divergence,
    read_histogram_csv,
    write_histogram_csv,
)

__all__ = [
    "HistogramConfig",
    "FreqHistogram",
    "build_histogram",
    "accumulate",
    "kl_divergence",
    "pairwise_divergence",
    "write_histogram_csv",
    "read_histogram_csv",
    "HISTOGRAM_CSV_HEADER",
]
