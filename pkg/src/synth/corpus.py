"""Seeded synthetic voice/music corpus.

Voice-like segments are harmonic stacks with coherent vibrato (large pitch
modulation); music-like segments are mixtures of steady tones spread over a
wide frequency range. Both get a white-noise floor.
"""

import logging
import math

import numpy as np

from ..errors import InvalidParamsError
from ..wave_io import LabeledSegment, SampledSignal, Tag
from .am_fm import AmFmParams, gen_multicomponent

logger = logging.getLogger(__name__)

VOICE_F0_RANGE_HZ = (150.0, 350.0)
VOICE_HARMONICS = 4
VIBRATO_RATE_RANGE_HZ = (5.0, 7.0)
VIBRATO_DEPTH_RANGE = (0.02, 0.04)
MUSIC_TONE_COUNT_RANGE = (3, 6)
MUSIC_FREQ_RANGE_HZ = (100.0, 5000.0)
MUSIC_AMPLITUDE_RANGE = (0.2, 1.0)
NOISE_SNR_DB = 30.0
PEAK_LEVEL = 0.9


def _voice_components(rng: np.random.Generator) -> list[AmFmParams]:
    f0 = rng.uniform(*VOICE_F0_RANGE_HZ)
    rate = rng.uniform(*VIBRATO_RATE_RANGE_HZ)
    depth = rng.uniform(*VIBRATO_DEPTH_RANGE)
    return [
        AmFmParams(
            amplitude=1.0 / k,
            carrier_hz=k * f0,
            fm_dev_hz=k * depth * f0,
            fm_rate_hz=rate,
            phase=rng.uniform(0, 2 * math.pi),
        )
        for k in range(1, VOICE_HARMONICS + 1)
    ]


def _music_components(rng: np.random.Generator) -> list[AmFmParams]:
    n_tones = int(rng.integers(MUSIC_TONE_COUNT_RANGE[0], MUSIC_TONE_COUNT_RANGE[1] + 1))
    return [
        AmFmParams(
            amplitude=rng.uniform(*MUSIC_AMPLITUDE_RANGE),
            carrier_hz=rng.uniform(*MUSIC_FREQ_RANGE_HZ),
            phase=rng.uniform(0, 2 * math.pi),
        )
        for _ in range(n_tones)
    ]


def _finish(samples: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Add the noise floor and scale to the common peak level."""
    signal_power = float(np.mean(samples**2))
    noise_std = math.sqrt(signal_power / 10 ** (NOISE_SNR_DB / 10))
    noisy = samples + rng.normal(0.0, noise_std, samples.size)
    return noisy * (PEAK_LEVEL / np.max(np.abs(noisy)))


def gen_corpus(
    n_voice: int,
    n_music: int,
    segment_len_s: float,
    sample_rate_hz: float,
    seed: int,
) -> list[LabeledSegment]:
    """Generate ``n_voice`` voice-like then ``n_music`` music-like segments.

    Segment i draws from its own generator spawned from ``seed``, so any
    segment can be regenerated independently of the others.
    """
    if n_voice < 0 or n_music < 0:
        raise InvalidParamsError(f"segment counts must be >= 0, got ({n_voice}, {n_music})")
    if MUSIC_FREQ_RANGE_HZ[1] >= sample_rate_hz / 2:
        raise InvalidParamsError(
            f"sample rate {sample_rate_hz} Hz too low for tones up to {MUSIC_FREQ_RANGE_HZ[1]} Hz"
        )

    children = np.random.SeedSequence(seed).spawn(n_voice + n_music)
    plan = [(Tag.VOICE, i) for i in range(n_voice)] + [(Tag.MUSIC, i) for i in range(n_music)]

    segments = []
    for (tag, i), child in zip(plan, children):
        rng = np.random.default_rng(child)
        components = _voice_components(rng) if tag is Tag.VOICE else _music_components(rng)
        clean = gen_multicomponent(components, segment_len_s, sample_rate_hz)
        samples = _finish(clean.samples, rng)
        source_id = f"synth_{tag.display_name.lower()}_{i:03d}"
        segments.append(LabeledSegment(SampledSignal(samples, sample_rate_hz), tag, source_id, 0.0))

    logger.info(f"Generated synthetic corpus: {n_voice} voice + {n_music} music segments (seed={seed})")
    return segments
