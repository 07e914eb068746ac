import json

import numpy as np
import pytest

from conftest import FS
from src.classifier import (
    ConfusionMatrix,
    ReferenceModel,
    build_reference,
    classify,
    cross_validate,
    decide,
    featurize,
    reference_folds,
)
from src.errors import (
    ConfigMismatchError,
    MissingClassError,
    NotEnoughSegmentsError,
    NoValidSamplesError,
    UsageError,
)
from src.features import HistogramConfig
from src.filterbank import paper_bands
from src.separator import VoiceMusicSeparator
from src.synth import gen_corpus
from src.wave_io import LabeledSegment, SampledSignal, Tag


def _segment(samples, tag=Tag.VOICE, source="test") -> LabeledSegment:
    return LabeledSegment(SampledSignal(samples, FS), tag, source, 0.0)


def _tone(freq_hz: float, seconds: float = 0.5) -> np.ndarray:
    return np.cos(2 * np.pi * freq_hz * np.arange(int(seconds * FS)) / FS)


# ---------------------------------------------------------------- featurize


def test_featurize_finds_tone_in_low_band(bands, hist_config):
    hists = featurize(_segment(_tone(240.0)), bands, hist_config)
    assert len(hists) == 3
    edges = hists[0].config.bin_edges
    peak = int(np.argmax(hists[0].probs))
    assert edges[peak] <= 240.0 < edges[peak + 1]


def test_featurize_silence(bands, hist_config):
    with pytest.raises(NoValidSamplesError, match="band 0"):
        featurize(_segment(np.zeros(4000)), bands, hist_config)


@pytest.mark.parametrize("scale", [0.1, 3.0])
def test_scale_invariance(small_corpus, bands, hist_config, scale):
    model = build_reference(small_corpus, bands, hist_config)
    for segment in small_corpus:
        base = featurize(segment, bands, hist_config)
        scaled = featurize(segment.scaled(scale), bands, hist_config)
        for h1, h2 in zip(base, scaled):
            np.testing.assert_array_equal(h1.counts, h2.counts)
            np.testing.assert_array_equal(h1.probs, h2.probs)
        r1, r2 = classify(segment, model), classify(segment.scaled(scale), model)
        assert r1 == r2


# ---------------------------------------------------------------- build_reference


def test_single_segment_references(bands, hist_config):
    voice, music = _segment(_tone(300.0)), _segment(_tone(1200.0), Tag.MUSIC)
    model = build_reference([voice, music], bands, hist_config)
    for ref, hist in zip(model.p_voice, featurize(voice, bands, hist_config)):
        np.testing.assert_array_equal(ref.probs, hist.probs)
    assert model.provenance == {"Voice": 1, "Music": 1}
    assert model.sample_rate_hz == FS


def test_provenance_counts(bands, hist_config):
    corpus = gen_corpus(30, 20, 0.1, FS, seed=4)
    model = build_reference(corpus, bands, hist_config)
    assert model.provenance == {"Voice": 30, "Music": 20}


def test_duplicated_references_unchanged(small_corpus, bands):
    config = HistogramConfig(smoothing_alpha=1e-12)
    once = build_reference(small_corpus, bands, config)
    twice = build_reference(list(small_corpus) * 2, bands, config)
    for a, b in zip(once.p_voice + once.p_music, twice.p_voice + twice.p_music):
        np.testing.assert_allclose(a.probs, b.probs, atol=1e-9)


def test_missing_class(bands, hist_config):
    with pytest.raises(MissingClassError):
        build_reference([_segment(_tone(300.0))], bands, hist_config)


def test_untagged_reference(bands, hist_config):
    with pytest.raises(UsageError):
        build_reference([_segment(_tone(300.0), tag=None)], bands, hist_config)


# ---------------------------------------------------------------- classify


def test_classify_sole_reference(bands, hist_config):
    voice, music = _segment(_tone(300.0)), _segment(_tone(1200.0), Tag.MUSIC)
    model = build_reference([voice, music], bands, hist_config)
    result = classify(voice.scaled(0.5), model)
    assert result.score_voice == pytest.approx(0.0, abs=1e-12)
    assert result.predicted is Tag.VOICE
    assert result.score_voice == sum(dv for dv, _ in result.per_band)
    assert classify(music, model).predicted is Tag.MUSIC


def test_tie_goes_to_music(bands, hist_config):
    segment = _segment(_tone(300.0))
    hists = tuple(featurize(segment, bands, hist_config))
    model = ReferenceModel(
        bands.for_sample_rate(FS), hist_config.resolve(FS), hists, hists, {"Voice": 1, "Music": 1}
    )
    result = decide(hists, model)
    assert result.score_voice == result.score_music == 0.0
    assert result.predicted is Tag.MUSIC


def test_classify_rate_mismatch(small_corpus, bands, hist_config):
    model = build_reference(small_corpus, bands, hist_config)
    other = LabeledSegment(SampledSignal(_tone(300.0), 16000.0), None, "x", 0.0)
    with pytest.raises(ConfigMismatchError):
        classify(other, model)


# ---------------------------------------------------------------- model persistence


def test_model_round_trip(tmp_path, small_corpus, bands, hist_config):
    model = build_reference(small_corpus, bands, hist_config)
    path = tmp_path / "model.json"
    model.save(path)
    loaded = ReferenceModel.load(path)
    assert loaded.bands == model.bands
    assert loaded.hist_config == model.hist_config
    assert loaded.provenance == model.provenance
    for a, b in zip(model.p_voice + model.p_music, loaded.p_voice + loaded.p_music):
        np.testing.assert_array_equal(a.probs, b.probs)
    segment = small_corpus[0]
    assert classify(segment, loaded) == classify(segment, model)


def test_model_bytes_are_deterministic(tmp_path, small_corpus, bands, hist_config):
    build_reference(small_corpus, bands, hist_config).save(tmp_path / "a.json")
    build_reference(small_corpus, bands, hist_config).save(tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_model_version_mismatch(tmp_path, small_corpus, bands, hist_config):
    data = build_reference(small_corpus, bands, hist_config).to_dict()
    data["version"] = 2
    path = tmp_path / "model.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ConfigMismatchError):
        ReferenceModel.load(path)


# ---------------------------------------------------------------- cross_validate


def test_confusion_matrix():
    matrix = ConfusionMatrix()
    matrix.add(Tag.VOICE, Tag.VOICE)
    matrix.add(Tag.VOICE, Tag.MUSIC)
    matrix.add(Tag.MUSIC, Tag.MUSIC)
    assert matrix.row_sum(Tag.VOICE) == 2
    assert matrix.accuracy(Tag.VOICE) == 0.5
    assert matrix.accuracy(Tag.MUSIC) == 1.0
    assert (matrix + matrix).count(Tag.VOICE, Tag.MUSIC) == 2


@pytest.fixture(scope="module")
def protocol_corpus():
    return gen_corpus(150, 100, 0.1, FS, seed=21)


def test_fold_arithmetic(protocol_corpus, bands, hist_config):
    report = cross_validate(protocol_corpus, bands, hist_config, k=5, seed=3)
    for sizes in report.fold_sizes:
        assert sizes["reference"] == {"Voice": 30, "Music": 20}
        assert sizes["tested"] == {"Voice": 120, "Music": 80}
    assert report.aggregate.row_sum(Tag.VOICE) == 4 * 150
    assert report.aggregate.row_sum(Tag.MUSIC) == 4 * 100
    total = ConfusionMatrix()
    for fold in report.folds:
        total = total + fold
    assert total == report.aggregate
    for band in report.per_band:
        assert band.row_sum(Tag.MUSIC) == 400
    assert report.degenerate == 0


def test_cross_validation_is_deterministic(protocol_corpus, bands, hist_config):
    a = cross_validate(protocol_corpus, bands, hist_config, k=5, seed=3)
    b = cross_validate(protocol_corpus, bands, hist_config, k=5, seed=3, workers=4)
    assert a.to_dict() == b.to_dict()
    assert a.format_table() == b.format_table()


def test_reference_folds_partition_indices():
    indices = list(range(100, 113))
    folds = reference_folds(indices, 5, seed=4)
    assert [len(f) for f in folds] == [3, 3, 3, 2, 2]
    assert sorted(np.concatenate(folds).tolist()) == indices
    again = reference_folds(indices, 5, seed=4)
    assert all(np.array_equal(a, b) for a, b in zip(folds, again))


def test_uneven_tags_spread_remainder_over_first_folds(bands, hist_config):
    corpus = gen_corpus(7, 6, 0.1, FS, seed=8)
    report = cross_validate(corpus, bands, hist_config, k=3, seed=2)
    assert [s["reference"]["Voice"] for s in report.fold_sizes] == [3, 2, 2]
    assert [s["reference"]["Music"] for s in report.fold_sizes] == [2, 2, 2]
    assert [s["tested"]["Voice"] for s in report.fold_sizes] == [4, 5, 5]
    assert report.aggregate.row_sum(Tag.VOICE) == 2 * 7


def test_degenerate_segment_counts_as_error(bands, hist_config):
    corpus = gen_corpus(5, 6, 0.1, FS, seed=5) + [_segment(np.zeros(2205), source="silent")]
    report = cross_validate(corpus, bands, hist_config, k=2, seed=0)
    assert report.degenerate == 1
    assert report.aggregate.row_sum(Tag.VOICE) == 6


def test_cross_validation_errors(bands, hist_config):
    corpus = gen_corpus(4, 6, 0.1, FS, seed=5)
    with pytest.raises(NotEnoughSegmentsError):
        cross_validate(corpus, bands, hist_config, k=5)
    with pytest.raises(UsageError):
        cross_validate(corpus, bands, hist_config, k=1)


def test_table_layout(protocol_corpus, bands, hist_config):
    table = cross_validate(protocol_corpus, bands, hist_config, k=5, seed=3).format_table()
    lines = table.splitlines()
    assert lines[1].split() == ["Class", "Segments", "Misrecognized", "Correct", "Percent"]
    assert lines[2].split()[:2] == ["Voice", "600"]
    assert lines[3].split()[:2] == ["Music", "400"]


# ---------------------------------------------------------------- separator facade


def test_separator_fit_classify_save_load(tmp_path, small_corpus):
    separator = VoiceMusicSeparator(hist_config=HistogramConfig(n_bins=64))
    assert not separator.is_fitted
    with pytest.raises(UsageError):
        separator.classify(small_corpus[0])
    separator.fit(small_corpus)
    result = separator.classify(small_corpus[0])
    separator.save(tmp_path / "m.json")
    restored = VoiceMusicSeparator.load(tmp_path / "m.json")
    assert restored.classify(small_corpus[0]) == result
    assert restored.bands == paper_bands(FS)
    assert "mel" in VoiceMusicSeparator.available_layouts()


# ---------------------------------------------------------------- synthetic corpus


@pytest.mark.slow
def test_vibrato_segment_is_voice(bands, hist_config):
    references = gen_corpus(20, 20, 2.0, FS, seed=100)
    model = build_reference(references, bands, hist_config)
    fresh = gen_corpus(5, 0, 2.0, FS, seed=200)
    predictions = [classify(segment, model).predicted for segment in fresh]
    assert predictions.count(Tag.VOICE) >= 4


@pytest.mark.slow
def test_synthetic_corpus_accuracy(bands, hist_config):
    corpus = gen_corpus(100, 100, 2.0, FS, seed=0)
    report = cross_validate(corpus, bands, hist_config, k=5, ref_fraction=0.2, seed=0)
    assert report.accuracy(Tag.VOICE) >= 0.9
    assert report.accuracy(Tag.MUSIC) >= 0.9
