"""Voice/music reference models, KL classification and k-fold evaluation.

Usage:
    from src.classifier import build_reference, classify, cross_validate

    model = build_reference(reference_segments, bands, hist_config)
    result = classify(segment, model)
    report = cross_validate(segments, bands, hist_config, k=5, seed=0)
"""

from .evaluation import (
    TAG_ORDER,
    ConfusionMatrix,
    CrossValidationReport,
    cross_validate,
    reference_folds,
)
from .model import MODEL_VERSION, ReferenceModel
from .pipeline import (
    ClassificationResult,
    bind_sample_rate,
    build_reference,
    classify,
    decide,
    demodulate,
    featurize,
    featurize_all,
    reference_from_features,
)

__all__ = [
    "ReferenceModel",
    "MODEL_VERSION",
    "ClassificationResult",
    "demodulate",
    "featurize",
    "featurize_all",
    "build_reference",
    "bind_sample_rate",
    "reference_from_features",
    "classify",
    "decide",
    "ConfusionMatrix",
    "CrossValidationReport",
    "cross_validate",
    "reference_folds",
    "TAG_ORDER",
]
