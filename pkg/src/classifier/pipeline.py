"""Segment featurization, reference building and KL classification.

Featurization per band: Gabor bandpass -> DESA-1 -> mask the filter transient
(half the kernel length at each end) -> frequency histogram.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

from ..demod import DemodTrack, desa1, invalidate_edges
from ..errors import (
    ConfigMismatchError,
    EmptyInputError,
    MissingClassError,
    NoValidSamplesError,
    SampleRateMismatchError,
    UsageError,
)
from ..features import FreqHistogram, HistogramConfig, accumulate, build_histogram, kl_divergence
from ..filterbank import FilterbankConfig, GaborBand, bandpass, build_filterbank
from ..wave_io import LabeledSegment, Tag
from .model import ReferenceModel

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class ClassificationResult:
    """Decision for one segment.

    ``per_band`` holds (D(p_voice, p_T), D(p_music, p_T)) for each band.
    """

    predicted: Tag
    score_voice: float
    score_music: float
    per_band: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "predicted": self.predicted.display_name,
            "score_voice": self.score_voice,
            "score_music": self.score_music,
            "per_band": [{"d_voice": dv, "d_music": dm} for dv, dm in self.per_band],
        }


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Map in input order, on a thread pool when ``workers > 1``."""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


@lru_cache(maxsize=16)
def _filterbank(bands: FilterbankConfig, sample_rate_hz: float) -> tuple[GaborBand, ...]:
    return tuple(build_filterbank(bands, sample_rate_hz))


def _check_rate(segment: LabeledSegment, bands: FilterbankConfig) -> float:
    fs = segment.signal.sample_rate_hz
    if bands.sample_rate_hz is not None and bands.sample_rate_hz != fs:
        raise SampleRateMismatchError(
            f"segment {segment.segment_id} is {fs:g} Hz, filterbank built for {bands.sample_rate_hz:g} Hz"
        )
    return fs


def demodulate(
    segment: LabeledSegment,
    bands: FilterbankConfig,
    smooth_teo_len: int = 1,
) -> list[DemodTrack]:
    """Per-band DESA-1 tracks of a segment with filter transients masked."""
    fs = _check_rate(segment, bands)
    tracks = []
    for band in _filterbank(bands, fs):
        filtered = bandpass(segment.signal, band)
        track = desa1(filtered.samples, fs, smooth_teo_len)
        tracks.append(invalidate_edges(track, band.half_len))
    return tracks


def featurize(
    segment: LabeledSegment,
    bands: FilterbankConfig,
    hist_config: HistogramConfig,
    smooth_teo_len: int = 1,
) -> list[FreqHistogram]:
    """One instantaneous-frequency histogram per band, in band order.

    Raises:
        NoValidSamplesError: A band has no valid sample (e.g. digital silence).
        SampleRateMismatchError: The filterbank is bound to another rate.
    """
    histograms = []
    for b, track in enumerate(demodulate(segment, bands, smooth_teo_len)):
        try:
            histograms.append(build_histogram(track, hist_config))
        except NoValidSamplesError as e:
            raise NoValidSamplesError(f"segment {segment.segment_id}, band {b}: {e}") from e
    return histograms


def featurize_all(
    segments: Sequence[LabeledSegment],
    bands: FilterbankConfig,
    hist_config: HistogramConfig,
    smooth_teo_len: int = 1,
    workers: int = 1,
    skip_degenerate: bool = False,
) -> list[list[FreqHistogram] | None]:
    """Featurize many segments; degenerate ones become ``None`` when skipped."""

    def one(segment: LabeledSegment) -> list[FreqHistogram] | None:
        try:
            return featurize(segment, bands, hist_config, smooth_teo_len)
        except NoValidSamplesError as e:
            if not skip_degenerate:
                raise
            logger.warning(f"Degenerate segment: {e}")
            return None

    return parallel_map(one, segments, workers)


def bind_sample_rate(segments: Sequence[LabeledSegment], bands: FilterbankConfig) -> FilterbankConfig:
    if not segments:
        raise EmptyInputError("no segments given")
    rates = {segment.signal.sample_rate_hz for segment in segments}
    if len(rates) > 1:
        raise SampleRateMismatchError(f"segments mix sample rates: {sorted(rates)}")
    fs = rates.pop()
    if bands.sample_rate_hz is not None and bands.sample_rate_hz != fs:
        raise SampleRateMismatchError(
            f"segments are {fs:g} Hz, filterbank built for {bands.sample_rate_hz:g} Hz"
        )
    return bands.for_sample_rate(fs)


def reference_from_features(
    features: Sequence[tuple[Tag, Sequence[FreqHistogram]]],
    bands: FilterbankConfig,
    hist_config: HistogramConfig,
    smooth_teo_len: int = 1,
) -> ReferenceModel:
    """Pool already computed per-segment histograms into a reference model."""
    pooled: dict[Tag, tuple[FreqHistogram, ...]] = {}
    provenance: dict[str, int] = {}
    for tag in Tag:
        mine = [hists for t, hists in features if t is tag]
        if not mine:
            raise MissingClassError(f"no {tag.display_name} reference segments")
        pooled[tag] = tuple(accumulate([hists[b] for hists in mine]) for b in range(bands.num_bands))
        provenance[tag.display_name] = len(mine)

    resolved = hist_config.resolve(bands.sample_rate_hz) if bands.sample_rate_hz else hist_config
    return ReferenceModel(
        bands=bands,
        hist_config=resolved,
        p_voice=pooled[Tag.VOICE],
        p_music=pooled[Tag.MUSIC],
        provenance=provenance,
        smooth_teo_len=smooth_teo_len,
    )


def build_reference(
    segments: Sequence[LabeledSegment],
    bands: FilterbankConfig,
    hist_config: HistogramConfig,
    smooth_teo_len: int = 1,
    workers: int = 1,
) -> ReferenceModel:
    """Build pooled voice and music references from tagged segments.

    Raises:
        MissingClassError: A tag has no segments.
    """
    if any(segment.tag is None for segment in segments):
        raise UsageError("reference segments must all be tagged")
    for tag in Tag:
        if not any(segment.tag is tag for segment in segments):
            raise MissingClassError(f"no {tag.display_name} reference segments")

    bands = bind_sample_rate(segments, bands)
    features = featurize_all(segments, bands, hist_config, smooth_teo_len, workers)
    model = reference_from_features(
        [(segment.tag, hists) for segment, hists in zip(segments, features)],
        bands,
        hist_config,
        smooth_teo_len,
    )
    logger.info(
        f"Built reference model: {model.provenance['Voice']} voice / "
        f"{model.provenance['Music']} music segments, {bands.num_bands} bands"
    )
    return model


def decide(test: Sequence[FreqHistogram], model: ReferenceModel) -> ClassificationResult:
    """Score test histograms against a model; ties go to Music."""
    if len(test) != model.bands.num_bands:
        raise ConfigMismatchError(f"expected {model.bands.num_bands} band histograms, got {len(test)}")
    per_band = tuple(
        (kl_divergence(pv, pt), kl_divergence(pm, pt))
        for pv, pm, pt in zip(model.p_voice, model.p_music, test)
    )
    score_voice = sum(dv for dv, _ in per_band)
    score_music = sum(dm for _, dm in per_band)
    predicted = Tag.VOICE if score_voice < score_music else Tag.MUSIC
    return ClassificationResult(predicted, score_voice, score_music, per_band)


def classify(segment: LabeledSegment, model: ReferenceModel) -> ClassificationResult:
    """Classify one segment against a reference model."""
    if model.sample_rate_hz is not None and segment.signal.sample_rate_hz != model.sample_rate_hz:
        raise ConfigMismatchError(
            f"segment {segment.segment_id} is {segment.signal.sample_rate_hz:g} Hz, "
            f"model built for {model.sample_rate_hz:g} Hz"
        )
    test = featurize(segment, model.bands, model.hist_config, model.smooth_teo_len)
    result = decide(test, model)
    logger.debug(
        f"{segment.segment_id}: {result.predicted.display_name} "
        f"(D_voice={result.score_voice:.4f}, D_music={result.score_music:.4f})"
    )
    return result
