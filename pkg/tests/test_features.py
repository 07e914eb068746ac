import math

import numpy as np
import pytest

from conftest import FS
from src.demod import DemodTrack
from src.errors import ConfigMismatchError, EmptyInputError, InvalidRangeError, NoValidSamplesError
from src.features import (
    FreqHistogram,
    HistogramConfig,
    accumulate,
    build_histogram,
    kl_divergence,
    pairwise_divergence,
    read_histogram_csv,
    write_histogram_csv,
)

CONFIG = HistogramConfig(n_bins=128, f_max_hz=FS / 2, smoothing_alpha=1e-6)


def _track(freqs, valid=None) -> DemodTrack:
    freqs = np.asarray(freqs, dtype=np.float64)
    valid = np.ones(freqs.size, dtype=bool) if valid is None else valid
    return DemodTrack(freqs, np.ones(freqs.size), valid, FS)


def _bin_centers(config: HistogramConfig) -> np.ndarray:
    edges = config.bin_edges
    return (edges[:-1] + edges[1:]) / 2


def _random_histogram(rng, n_bins: int = 16) -> FreqHistogram:
    config = HistogramConfig(n_bins=n_bins, f_max_hz=1000.0)
    return FreqHistogram.from_counts(rng.integers(0, 50, n_bins), config)


# ---------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kwargs",
    [{"n_bins": 1}, {"f_min_hz": 100.0, "f_max_hz": 100.0}, {"smoothing_alpha": 0.0}],
)
def test_config_validation(kwargs):
    with pytest.raises(InvalidRangeError):
        HistogramConfig(**kwargs)


def test_config_resolves_nyquist():
    assert HistogramConfig().resolve(FS).f_max_hz == FS / 2
    assert CONFIG.resolve(8000.0) is CONFIG


# ---------------------------------------------------------------- build_histogram


def test_probabilities_are_normalized_and_positive():
    hist = build_histogram(_track(np.linspace(100, 5000, 777)), CONFIG)
    assert hist.probs.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(hist.probs > 0)
    assert hist.sample_count == 777


def test_point_mass():
    config = HistogramConfig(n_bins=128, f_max_hz=FS / 2, smoothing_alpha=1e-12)
    hist = build_histogram(_track(np.full(1000, 738.0)), config)
    edges = config.bin_edges
    peak = int(np.argmax(hist.probs))
    assert edges[peak] <= 738.0 < edges[peak + 1]
    assert hist.probs[peak] == pytest.approx(1.0, abs=1e-9)


def test_uniform_striding():
    centers = _bin_centers(CONFIG)
    hist = build_histogram(_track(np.tile(centers, 10)), CONFIG)
    np.testing.assert_allclose(hist.probs, 1 / CONFIG.n_bins, atol=1e-9)


def test_sampled_distribution():
    rng = np.random.default_rng(42)
    config = HistogramConfig(n_bins=16, f_max_hz=4000.0, smoothing_alpha=1e-6)
    source = rng.dirichlet(np.ones(16))
    draws = rng.choice(_bin_centers(config), size=10_000, p=source)
    hist = build_histogram(_track(draws), config)
    assert np.max(np.abs(hist.probs - source)) < 0.02


def test_out_of_range_frequencies_clip_to_edge_bins():
    config = HistogramConfig(n_bins=4, f_min_hz=100.0, f_max_hz=500.0, smoothing_alpha=1e-12)
    hist = build_histogram(_track([50.0, 600.0]), config)
    assert hist.counts.tolist() == [1.0, 0.0, 0.0, 1.0]


def test_invalid_samples_are_ignored():
    valid = np.array([True, False, True])
    hist = build_histogram(_track([200.0, 9000.0, 200.0], valid), CONFIG)
    assert hist.sample_count == 2


def test_no_valid_samples():
    with pytest.raises(NoValidSamplesError):
        build_histogram(_track([100.0, 200.0], np.zeros(2, dtype=bool)), CONFIG)


# ---------------------------------------------------------------- accumulate


def test_accumulate_single():
    hist = build_histogram(_track(np.linspace(0, 8000, 500)), CONFIG)
    np.testing.assert_allclose(accumulate([hist]).probs, hist.probs, atol=1e-12)


def test_accumulate_equals_pooled_build():
    rng = np.random.default_rng(3)
    a = rng.uniform(0, FS / 2, 3000)
    b = rng.normal(1000, 200, 5000).clip(0, FS / 2)
    pooled = accumulate([build_histogram(_track(a), CONFIG), build_histogram(_track(b), CONFIG)])
    direct = build_histogram(_track(np.concatenate([a, b])), CONFIG)
    np.testing.assert_allclose(pooled.probs, direct.probs, atol=1e-9)
    assert pooled.sample_count == 8000


def test_accumulate_equal_counts_is_mean():
    rng = np.random.default_rng(4)
    h1 = build_histogram(_track(rng.uniform(0, 3000, 2000)), CONFIG)
    h2 = build_histogram(_track(rng.uniform(2000, 9000, 2000)), CONFIG)
    np.testing.assert_allclose(accumulate([h1, h2]).probs, (h1.probs + h2.probs) / 2, atol=1e-4)


def test_accumulate_errors():
    with pytest.raises(EmptyInputError):
        accumulate([])
    h1 = build_histogram(_track([100.0]), CONFIG)
    h2 = build_histogram(_track([100.0]), HistogramConfig(n_bins=64, f_max_hz=FS / 2))
    with pytest.raises(ConfigMismatchError):
        accumulate([h1, h2])


# ---------------------------------------------------------------- kl_divergence


def test_kl_self_is_zero():
    hist = build_histogram(_track(np.linspace(0, 9000, 300)), CONFIG)
    assert kl_divergence(hist, hist) == 0.0


def test_kl_two_bins():
    config = HistogramConfig(n_bins=2, f_max_hz=100.0, smoothing_alpha=1e-12)
    p1 = FreqHistogram.from_counts([2, 2], config)
    p2 = FreqHistogram.from_counts([1, 3], config)
    expected = 0.5 * math.log(2) + 0.5 * math.log(2 / 3)
    assert expected == pytest.approx(0.14384, abs=1e-5)
    assert kl_divergence(p1, p2) == pytest.approx(expected, abs=1e-9)


def test_kl_non_negative_and_asymmetric():
    rng = np.random.default_rng(7)
    asymmetric = False
    for _ in range(1000):
        p, q = _random_histogram(rng), _random_histogram(rng)
        d_pq, d_qp = kl_divergence(p, q), kl_divergence(q, p)
        assert d_pq >= 0.0 and d_qp >= 0.0
        asymmetric |= not math.isclose(d_pq, d_qp, rel_tol=1e-9)
    assert asymmetric


def test_default_smoothing_favors_broad_reference_for_steady_tone():
    tone = np.zeros(128)
    tone[0] = 40_000
    narrow = np.zeros(128)
    narrow[:3] = [120_000, 140_000, 140_000]
    broad = np.zeros(128)
    broad[0], broad[1:121] = 40_000, 3_000

    def divergences(config):
        test = FreqHistogram.from_counts(tone, config)
        return (
            kl_divergence(FreqHistogram.from_counts(narrow, config), test),
            kl_divergence(FreqHistogram.from_counts(broad, config), test),
        )

    d_narrow, d_broad = divergences(HistogramConfig(f_max_hz=FS / 2))
    assert d_broad < d_narrow
    d_narrow, d_broad = divergences(HistogramConfig(f_max_hz=FS / 2, smoothing_alpha=1e-6))
    assert d_narrow < d_broad


def test_kl_config_mismatch():
    h1 = FreqHistogram.from_counts([1, 1], HistogramConfig(n_bins=2, f_max_hz=100.0))
    h2 = FreqHistogram.from_counts([1, 1], HistogramConfig(n_bins=2, f_max_hz=200.0))
    with pytest.raises(ConfigMismatchError):
        kl_divergence(h1, h2)


def test_pairwise_divergence():
    rng = np.random.default_rng(8)
    hists = [_random_histogram(rng) for _ in range(4)]
    matrix = pairwise_divergence(hists)
    assert matrix.shape == (4, 4)
    assert np.all(np.diag(matrix) == 0.0)
    assert matrix[1, 2] == kl_divergence(hists[1], hists[2])


# ---------------------------------------------------------------- csv


def test_histogram_csv(tmp_path):
    hist = build_histogram(_track(np.linspace(0, 5000, 100)), CONFIG)
    path = tmp_path / "h.csv"
    write_histogram_csv(path, hist)
    assert path.read_text().splitlines()[0] == "bin_low_hz,bin_high_hz,prob"
    edges, probs = read_histogram_csv(path)
    np.testing.assert_array_equal(edges, CONFIG.bin_edges)
    np.testing.assert_array_equal(probs, hist.probs)
