"""Stratified k-fold evaluation with disjoint reference folds.

Each tag's segments are shuffled with the seed and split into k folds by
scikit-learn's KFold, so the first ``n % k`` folds hold one extra segment. In
round i, fold i of every tag forms the reference and all remaining segments
are tested, so every segment is tested in exactly k - 1 rounds.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sklearn.model_selection import KFold

from ..errors import MissingClassError, NotEnoughSegmentsError, UsageError
from ..features import HistogramConfig
from ..filterbank import FilterbankConfig
from ..wave_io import LabeledSegment, Tag
from .pipeline import bind_sample_rate, decide, featurize_all, reference_from_features

logger = logging.getLogger(__name__)

TAG_ORDER = (Tag.VOICE, Tag.MUSIC)


def reference_folds(indices: Sequence[int], k: int, seed: int) -> list[np.ndarray]:
    """Shuffle ``indices`` and split them into k disjoint folds."""
    indices = np.asarray(indices)
    splitter = KFold(n_splits=k, shuffle=True, random_state=seed)
    return [indices[fold] for _, fold in splitter.split(indices)]


def _other(tag: Tag) -> Tag:
    return Tag.MUSIC if tag is Tag.VOICE else Tag.VOICE


@dataclass
class ConfusionMatrix:
    """2x2 counts indexed (true tag, predicted tag) in TAG_ORDER."""

    counts: np.ndarray = field(default_factory=lambda: np.zeros((2, 2), dtype=np.int64))

    def add(self, true: Tag, predicted: Tag) -> None:
        self.counts[TAG_ORDER.index(true), TAG_ORDER.index(predicted)] += 1

    def __add__(self, other: ConfusionMatrix) -> ConfusionMatrix:
        return ConfusionMatrix(self.counts + other.counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConfusionMatrix) and np.array_equal(self.counts, other.counts)

    def count(self, true: Tag, predicted: Tag) -> int:
        return int(self.counts[TAG_ORDER.index(true), TAG_ORDER.index(predicted)])

    def row_sum(self, tag: Tag) -> int:
        return int(self.counts[TAG_ORDER.index(tag)].sum())

    def correct(self, tag: Tag) -> int:
        return self.count(tag, tag)

    def accuracy(self, tag: Tag) -> float:
        total = self.row_sum(tag)
        return self.correct(tag) / total if total else float("nan")

    def to_dict(self) -> dict:
        return {
            "labels": [tag.display_name for tag in TAG_ORDER],
            "counts": self.counts.tolist(),
        }


@dataclass
class CrossValidationReport:
    """Aggregate and per-fold confusion matrices of a k-fold run."""

    aggregate: ConfusionMatrix
    folds: list[ConfusionMatrix]
    per_band: list[ConfusionMatrix]
    fold_sizes: list[dict]
    degenerate: int
    k: int
    seed: int

    def accuracy(self, tag: Tag) -> float:
        return self.aggregate.accuracy(tag)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "aggregate": self.aggregate.to_dict(),
            "accuracy": {tag.display_name: self.aggregate.accuracy(tag) for tag in TAG_ORDER},
            "folds": [
                {**sizes, "confusion": fold.to_dict()}
                for sizes, fold in zip(self.fold_sizes, self.folds)
            ],
            "per_band": [
                {
                    "band": b,
                    "confusion": matrix.to_dict(),
                    "accuracy": {tag.display_name: matrix.accuracy(tag) for tag in TAG_ORDER},
                }
                for b, matrix in enumerate(self.per_band)
            ],
            "degenerate": self.degenerate,
        }

    def format_table(self) -> str:
        """Plain-text table: segments, misrecognized, correct, percent per class."""
        lines = [
            f"{self.k}-fold cross validation (seed {self.seed})",
            f"{'Class':<8}{'Segments':>10}{'Misrecognized':>15}{'Correct':>9}{'Percent':>9}",
        ]
        for tag in TAG_ORDER:
            total = self.aggregate.row_sum(tag)
            correct = self.aggregate.correct(tag)
            lines.append(
                f"{tag.display_name:<8}{total:>10}{total - correct:>15}{correct:>9}"
                f"{100 * self.aggregate.accuracy(tag):>9.2f}"
            )
        lines.append("")
        lines.append("Per band (single-band decision):")
        for b, matrix in enumerate(self.per_band):
            lines.append(
                f"  band {b}: Voice {100 * matrix.accuracy(Tag.VOICE):6.2f}%  "
                f"Music {100 * matrix.accuracy(Tag.MUSIC):6.2f}%"
            )
        if self.degenerate:
            lines.append(f"Degenerate test segments counted as errors: {self.degenerate}")
        return "\n".join(lines)


def cross_validate(
    segments: Sequence[LabeledSegment],
    bands: FilterbankConfig,
    hist_config: HistogramConfig,
    k: int = 5,
    ref_fraction: float = 0.2,
    seed: int = 0,
    smooth_teo_len: int = 1,
    workers: int = 1,
) -> CrossValidationReport:
    """Run the k-fold protocol.

    Raises:
        UsageError: k < 2 or untagged segments.
        NotEnoughSegmentsError: A tag has fewer than k segments.
    """
    if k < 2:
        raise UsageError(f"k must be >= 2, got {k}")
    if any(segment.tag is None for segment in segments):
        raise UsageError("cross-validation segments must all be tagged")
    if abs(k * ref_fraction - 1.0) > 1e-9:
        logger.warning(
            f"ref_fraction {ref_fraction} does not match k={k}; each reference is one fold (1/{k})"
        )

    by_tag = {tag: [i for i, s in enumerate(segments) if s.tag is tag] for tag in TAG_ORDER}
    for tag, indices in by_tag.items():
        if len(indices) < k:
            raise NotEnoughSegmentsError(
                f"{tag.display_name} has {len(indices)} segments, need at least k={k}"
            )

    bands = bind_sample_rate(segments, bands)
    features = featurize_all(segments, bands, hist_config, smooth_teo_len, workers, skip_degenerate=True)

    folds_by_tag = {tag: reference_folds(indices, k, seed) for tag, indices in by_tag.items()}

    aggregate = ConfusionMatrix()
    per_band = [ConfusionMatrix() for _ in range(bands.num_bands)]
    fold_matrices: list[ConfusionMatrix] = []
    fold_sizes: list[dict] = []
    degenerate = 0

    for i in range(k):
        reference_ids = {tag: sorted(int(j) for j in folds_by_tag[tag][i]) for tag in TAG_ORDER}
        reference_set = set(reference_ids[Tag.VOICE]) | set(reference_ids[Tag.MUSIC])
        usable = [
            (segments[j].tag, features[j])
            for tag in TAG_ORDER
            for j in reference_ids[tag]
            if features[j] is not None
        ]
        try:
            model = reference_from_features(usable, bands, hist_config, smooth_teo_len)
        except MissingClassError as e:
            raise MissingClassError(f"fold {i}: {e}") from e

        matrix = ConfusionMatrix()
        tested = {tag.display_name: 0 for tag in TAG_ORDER}
        for j, segment in enumerate(segments):
            if j in reference_set:
                continue
            tested[segment.tag.display_name] += 1
            if features[j] is None:
                degenerate += 1
                matrix.add(segment.tag, _other(segment.tag))
                for band_matrix in per_band:
                    band_matrix.add(segment.tag, _other(segment.tag))
                continue
            result = decide(features[j], model)
            matrix.add(segment.tag, result.predicted)
            for b, (d_voice, d_music) in enumerate(result.per_band):
                per_band[b].add(segment.tag, Tag.VOICE if d_voice < d_music else Tag.MUSIC)

        fold_matrices.append(matrix)
        aggregate = aggregate + matrix
        fold_sizes.append({
            "fold": i,
            "reference": {tag.display_name: len(reference_ids[tag]) for tag in TAG_ORDER},
            "tested": tested,
        })
        logger.info(
            f"Fold {i + 1}/{k}: Voice {100 * matrix.accuracy(Tag.VOICE):.1f}%, "
            f"Music {100 * matrix.accuracy(Tag.MUSIC):.1f}%"
        )

    return CrossValidationReport(aggregate, fold_matrices, per_band, fold_sizes, degenerate, k, seed)
