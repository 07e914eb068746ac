"""Mel-spaced Gabor filterbank.

Usage:
    from src.filterbank import paper_bands, build_filterbank, bandpass

    bands = build_filterbank(paper_bands(), sample_rate_hz=22050)
    filtered = [bandpass(signal, band) for band in bands]
"""

from .base import DEFAULT_TRUNCATION_SIGMAS, FilterbankConfig, GaborBand
from .gabor import bandpass, build_filterbank, gabor_kernel, magnitude_response
from .layouts import (
    PAPER_BANDS,
    get_layout,
    hz_to_mel,
    list_layouts,
    mel_spaced_bands,
    mel_to_hz,
    paper_bands,
)

__all__ = [
    "GaborBand",
    "FilterbankConfig",
    "DEFAULT_TRUNCATION_SIGMAS",
    "gabor_kernel",
    "build_filterbank",
    "bandpass",
    "magnitude_response",
    # Layouts
    "PAPER_BANDS",
    "paper_bands",
    "mel_spaced_bands",
    "hz_to_mel",
    "mel_to_hz",
    "get_layout",
    "list_layouts",
]
