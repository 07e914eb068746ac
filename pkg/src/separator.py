"""VoiceMusicSeparator - unified interface for voice/music segmentation.

Usage:
    from src.separator import VoiceMusicSeparator

    # Default three-band layout and histograms
    separator = VoiceMusicSeparator()

    # Or with an explicit layout
    separator = VoiceMusicSeparator(
        layout="mel",
        layout_config={"n_bands": 4, "f_low_hz": 0.0, "f_high_hz": 3000.0},
        hist_config=HistogramConfig(n_bins=64),
    )

    separator.fit(training_segments)
    result = separator.classify(segment)
    separator.save("model.json")
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Sequence

from .classifier import (
    ClassificationResult,
    CrossValidationReport,
    ReferenceModel,
    build_reference,
    classify,
    cross_validate,
    featurize,
)
from .errors import UsageError
from .features import FreqHistogram, HistogramConfig
from .filterbank import FilterbankConfig, get_layout, list_layouts
from .wave_io import LabeledSegment

logger = logging.getLogger(__name__)


class VoiceMusicSeparator:
    """Owns a band layout, a histogram config and, once fitted, a reference model."""

    def __init__(
        self,
        layout: str | FilterbankConfig = "paper",
        layout_config: dict[str, Any] | None = None,
        hist_config: HistogramConfig | None = None,
        smooth_teo_len: int = 1,
        workers: int = 1,
    ) -> None:
        """Initialize the separator.

        Args:
            layout: Registered layout name (see ``list_layouts()``) or an explicit
                FilterbankConfig.
            layout_config: Layout-specific options (e.g. ``n_bands`` for "mel").
            hist_config: Frequency histogram binning.
            smooth_teo_len: Odd moving-average length over Teager energies (1 = off).
            workers: Threads used for featurization.
        """
        if isinstance(layout, FilterbankConfig):
            self._bands = layout
        else:
            self._bands = get_layout(layout, layout_config)
        self._hist_config = hist_config or HistogramConfig()
        self._smooth_teo_len = smooth_teo_len
        self._workers = workers
        self._model: ReferenceModel | None = None

    @property
    def bands(self) -> FilterbankConfig:
        return self._model.bands if self._model else self._bands

    @property
    def hist_config(self) -> HistogramConfig:
        return self._model.hist_config if self._model else self._hist_config

    @property
    def model(self) -> ReferenceModel | None:
        return self._model

    @property
    def is_fitted(self) -> bool:
        return self._model is not None

    def featurize(self, segment: LabeledSegment) -> list[FreqHistogram]:
        """Per-band frequency histograms of one segment."""
        return featurize(segment, self.bands, self.hist_config, self._smooth_teo_len)

    def fit(self, segments: Sequence[LabeledSegment]) -> ReferenceModel:
        """Build the voice and music references from tagged segments."""
        self._model = build_reference(
            segments, self._bands, self._hist_config, self._smooth_teo_len, self._workers
        )
        return self._model

    def classify(self, segment: LabeledSegment) -> ClassificationResult:
        if self._model is None:
            raise UsageError("separator is not fitted; call fit() or load() first")
        return classify(segment, self._model)

    def classify_all(self, segments: Sequence[LabeledSegment]) -> list[ClassificationResult]:
        return [self.classify(segment) for segment in segments]

    def cross_validate(
        self,
        segments: Sequence[LabeledSegment],
        k: int = 5,
        ref_fraction: float = 0.2,
        seed: int = 0,
    ) -> CrossValidationReport:
        """k-fold evaluation with this separator's layout; does not touch the fitted model."""
        return cross_validate(
            segments,
            self._bands,
            self._hist_config,
            k=k,
            ref_fraction=ref_fraction,
            seed=seed,
            smooth_teo_len=self._smooth_teo_len,
            workers=self._workers,
        )

    def save(self, path: str | Path) -> None:
        if self._model is None:
            raise UsageError("nothing to save; separator is not fitted")
        self._model.save(path)

    @classmethod
    def load(cls, path: str | Path, workers: int = 1) -> VoiceMusicSeparator:
        """Restore a fitted separator from a model JSON file."""
        model = ReferenceModel.load(path)
        separator = cls(model.bands, hist_config=model.hist_config,
                        smooth_teo_len=model.smooth_teo_len, workers=workers)
        separator._model = model
        logger.info(f"Loaded reference model from {path} ({model.bands.num_bands} bands)")
        return separator

    @staticmethod
    def available_layouts() -> list[str]:
        return list_layouts()
