"""AM-FM test signals with closed-form modulation tracks.

    x[n] = A (1 + m cos(2 pi f_am n / fs)) cos(2 pi f_c n / fs + (f_dev / f_fm) sin(2 pi f_fm n / fs) + theta)

The frequency modulation q(t) is a cosine, so the instantaneous frequency is
exactly f_c + f_dev cos(2 pi f_fm n / fs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..demod import DemodTrack
from ..errors import InvalidParamsError
from ..wave_io import SampledSignal


@dataclass(frozen=True)
class AmFmParams:
    """One AM-FM component."""

    amplitude: float
    carrier_hz: float
    fm_dev_hz: float = 0.0
    fm_rate_hz: float = 0.0
    am_depth: float = 0.0
    am_rate_hz: float = 0.0
    phase: float = 0.0

    def validate(self, sample_rate_hz: float) -> None:
        if not self.amplitude > 0:
            raise InvalidParamsError(f"amplitude must be positive, got {self.amplitude}")
        if self.fm_dev_hz < 0 or self.fm_rate_hz < 0 or self.am_rate_hz < 0:
            raise InvalidParamsError("modulation rates and deviation must be non-negative")
        if self.fm_dev_hz > 0 and self.fm_rate_hz == 0:
            raise InvalidParamsError("fm_dev_hz > 0 needs a positive fm_rate_hz")
        if not 0 <= self.am_depth < 1:
            raise InvalidParamsError(f"am_depth must be in [0, 1), got {self.am_depth}")
        if not self.carrier_hz - self.fm_dev_hz > 0:
            raise InvalidParamsError(
                f"carrier {self.carrier_hz} Hz minus deviation {self.fm_dev_hz} Hz must be positive"
            )
        if not self.carrier_hz + self.fm_dev_hz < sample_rate_hz / 2:
            raise InvalidParamsError(
                f"carrier {self.carrier_hz} Hz plus deviation {self.fm_dev_hz} Hz "
                f"must stay below Nyquist ({sample_rate_hz / 2} Hz)"
            )


def _num_samples(duration_s: float, sample_rate_hz: float) -> int:
    if not sample_rate_hz > 0 or not duration_s > 0:
        raise InvalidParamsError(
            f"duration and sample rate must be positive, got {duration_s} s at {sample_rate_hz} Hz"
        )
    return int(round(duration_s * sample_rate_hz))


def synthesis_phase(params: AmFmParams, n: np.ndarray, sample_rate_hz: float) -> np.ndarray:
    """Phase phi[n] in radians."""
    phase = 2 * math.pi * params.carrier_hz * n / sample_rate_hz + params.phase
    if params.fm_rate_hz > 0:
        phase = phase + (params.fm_dev_hz / params.fm_rate_hz) * np.sin(
            2 * math.pi * params.fm_rate_hz * n / sample_rate_hz
        )
    return phase


def gen_am_fm(
    params: AmFmParams,
    duration_s: float,
    sample_rate_hz: float,
) -> tuple[SampledSignal, DemodTrack]:
    """Generate one AM-FM component and its ground-truth track."""
    params.validate(sample_rate_hz)
    n = np.arange(_num_samples(duration_s, sample_rate_hz), dtype=np.float64)

    envelope = params.amplitude * (
        1 + params.am_depth * np.cos(2 * math.pi * params.am_rate_hz * n / sample_rate_hz)
    )
    samples = envelope * np.cos(synthesis_phase(params, n, sample_rate_hz))
    inst_freq = params.carrier_hz + params.fm_dev_hz * np.cos(
        2 * math.pi * params.fm_rate_hz * n / sample_rate_hz
    )
    truth = DemodTrack(inst_freq, envelope, np.ones(n.size, dtype=bool), float(sample_rate_hz))
    return SampledSignal(samples, sample_rate_hz), truth


def gen_multicomponent(
    components: Sequence[AmFmParams],
    duration_s: float,
    sample_rate_hz: float,
) -> SampledSignal:
    """Sample-wise sum of AM-FM components."""
    if not components:
        raise InvalidParamsError("need at least one component")
    total = np.zeros(_num_samples(duration_s, sample_rate_hz))
    for params in components:
        signal, _ = gen_am_fm(params, duration_s, sample_rate_hz)
        total += signal.samples
    return SampledSignal(total, sample_rate_hz)
