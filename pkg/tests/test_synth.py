import numpy as np
import pytest

from conftest import FS
from src.errors import InvalidParamsError
from src.synth import AmFmParams, gen_am_fm, gen_corpus, gen_multicomponent, synthesis_phase
from src.wave_io import Tag


def test_pure_sinusoid():
    signal, truth = gen_am_fm(AmFmParams(0.7, 1000.0), 0.1, FS)
    n = np.arange(len(signal))
    np.testing.assert_allclose(signal.samples, 0.7 * np.cos(2 * np.pi * 1000.0 * n / FS), atol=1e-12)
    assert np.all(truth.inst_freq_hz == 1000.0)
    assert np.all(truth.inst_amp == 0.7)
    assert truth.valid.all()


def test_am_fm_closed_form():
    params = AmFmParams(1.0, 738.0, 50.0, 7.0, 0.3, 3.0)
    signal, truth = gen_am_fm(params, 1.0, FS)
    n = np.arange(22050)
    expected = (1 + 0.3 * np.cos(2 * np.pi * 3 * n / FS)) * np.cos(
        2 * np.pi * 738 * n / FS + (50 / 7) * np.sin(2 * np.pi * 7 * n / FS)
    )
    np.testing.assert_allclose(signal.samples, expected, atol=1e-9)
    np.testing.assert_allclose(truth.inst_freq_hz, 738 + 50 * np.cos(2 * np.pi * 7 * n / FS), atol=1e-9)
    assert truth.inst_freq_hz.min() >= 688.0 and truth.inst_freq_hz.max() <= 788.0


@pytest.mark.parametrize(
    "params",
    [
        AmFmParams(0.0, 1000.0),
        AmFmParams(1.0, 30.0, fm_dev_hz=40.0, fm_rate_hz=5.0),
        AmFmParams(1.0, 11000.0, fm_dev_hz=100.0, fm_rate_hz=5.0),
        AmFmParams(1.0, 1000.0, am_depth=1.0),
        AmFmParams(1.0, 1000.0, fm_dev_hz=10.0),
    ],
)
def test_invalid_params(params):
    with pytest.raises(InvalidParamsError):
        gen_am_fm(params, 0.1, FS)


def test_single_component_matches_gen_am_fm():
    params = AmFmParams(0.5, 440.0, 20.0, 5.0, 0.2, 2.0, phase=0.3)
    single = gen_multicomponent([params], 0.2, FS)
    signal, _ = gen_am_fm(params, 0.2, FS)
    np.testing.assert_array_equal(single.samples, signal.samples)


def test_two_components_sum():
    a, b = AmFmParams(0.5, 440.0), AmFmParams(0.25, 1500.0, 30.0, 4.0)
    mix = gen_multicomponent([a, b], 0.2, FS)
    expected = gen_am_fm(a, 0.2, FS)[0].samples + gen_am_fm(b, 0.2, FS)[0].samples
    np.testing.assert_allclose(mix.samples, expected, atol=1e-12)


@pytest.mark.parametrize(
    "params",
    [
        AmFmParams(1.0, 738.0, 50.0, 7.0, 0.3, 3.0),
        AmFmParams(0.4, 220.0, 8.8, 5.5, phase=1.2),
        AmFmParams(2.0, 4000.0, 160.0, 6.0, 0.9, 11.0),
    ],
)
def test_phase_derivative_matches_truth(params):
    _, truth = gen_am_fm(params, 1.0, FS)
    n = np.arange(1, len(truth) - 1, dtype=np.float64)
    phase_step = synthesis_phase(params, n + 1, FS) - synthesis_phase(params, n - 1, FS)
    numeric_hz = phase_step * FS / (4 * np.pi)
    assert np.max(np.abs(numeric_hz - truth.inst_freq_hz[1:-1])) < 0.01


@pytest.mark.parametrize("amplitude, am_depth", [(1.0, 0.0), (0.5, 0.3), (2.0, 0.95)])
def test_peak_bound(amplitude, am_depth):
    params = AmFmParams(amplitude, 1000.0, 40.0, 6.0, am_depth, 4.0, phase=0.7)
    signal, truth = gen_am_fm(params, 1.0, FS)
    bound = amplitude * (1 + am_depth)
    assert np.max(np.abs(signal.samples)) <= bound + 1e-12
    assert np.max(truth.inst_amp) <= bound + 1e-12


def test_harmonic_stack_is_periodic():
    f0 = 245.0  # 90 samples per period at 22050 Hz
    stack = [AmFmParams(1.0 / k, k * f0) for k in (1, 2, 3)]
    x = gen_multicomponent(stack, 0.5, FS).samples
    lags = np.arange(20, 150)
    corr = [np.dot(x[:-lag], x[lag:]) / (len(x) - lag) for lag in lags]
    assert lags[int(np.argmax(corr))] == 90


def test_corpus_counts_and_order():
    corpus = gen_corpus(0, 5, 0.25, FS, seed=1)
    assert len(corpus) == 5
    assert all(s.tag is Tag.MUSIC for s in corpus)

    corpus = gen_corpus(3, 2, 0.25, FS, seed=1)
    assert [s.tag for s in corpus] == [Tag.VOICE] * 3 + [Tag.MUSIC] * 2
    assert corpus[0].source_id == "synth_voice_000"
    assert corpus[4].source_id == "synth_music_001"
    assert all(len(s.signal) == round(0.25 * FS) for s in corpus)


def test_corpus_is_deterministic():
    a = gen_corpus(4, 4, 0.25, FS, seed=9)
    b = gen_corpus(4, 4, 0.25, FS, seed=9)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.signal.samples, y.signal.samples)
    c = gen_corpus(4, 4, 0.25, FS, seed=10)
    assert not np.array_equal(a[0].signal.samples, c[0].signal.samples)


def test_corpus_peak_level():
    for segment in gen_corpus(3, 3, 0.25, FS, seed=2):
        assert np.max(np.abs(segment.signal.samples)) == pytest.approx(0.9)


def test_corpus_rejects_low_sample_rate():
    with pytest.raises(InvalidParamsError):
        gen_corpus(1, 1, 0.25, 8000.0, seed=0)
