"""DESA-1 energy separation: instantaneous frequency and amplitude.

With y[n] = x[n] - x[n-1] and G[n] = 1 - (psi[y[n]] + psi[y[n+1]]) / (4 psi[x[n]]):

    Omega[n] = arccos(G[n])                    (rad/sample)
    |a[n]|   = sqrt(psi[x[n]] / (1 - G[n]^2))

Samples where the estimate is meaningless are masked rather than repaired:
near-zero Teager energy, an arccos argument far outside [-1, 1], or a
vanishing amplitude denominator.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParamsError, TooShortError
from .teager import as_samples, smooth_energy, teager_interior

logger = logging.getLogger(__name__)

ENERGY_FLOOR_REL = 1e-10
CLAMP_TOLERANCE = 0.05
DENOMINATOR_FLOOR = 1e-10
EDGE_SAMPLES = 2


@dataclass(frozen=True, eq=False)
class DemodTrack:
    """Per-sample instantaneous frequency (Hz) and amplitude with a validity mask.

    Invalid samples carry frequency 0 and amplitude 0.
    """

    inst_freq_hz: np.ndarray
    inst_amp: np.ndarray
    valid: np.ndarray
    sample_rate_hz: float

    def __post_init__(self) -> None:
        freq = np.asarray(self.inst_freq_hz, dtype=np.float64)
        amp = np.asarray(self.inst_amp, dtype=np.float64)
        valid = np.asarray(self.valid, dtype=bool)
        if not freq.shape == amp.shape == valid.shape:
            raise InvalidParamsError(
                f"track arrays differ in length: {freq.shape}, {amp.shape}, {valid.shape}"
            )
        for arr in (freq, amp, valid):
            arr.setflags(write=False)
        object.__setattr__(self, "inst_freq_hz", freq)
        object.__setattr__(self, "inst_amp", amp)
        object.__setattr__(self, "valid", valid)

    def __len__(self) -> int:
        return int(self.valid.shape[0])

    @property
    def num_valid(self) -> int:
        return int(np.count_nonzero(self.valid))

    def valid_frequencies(self) -> np.ndarray:
        return self.inst_freq_hz[self.valid]

    def valid_amplitudes(self) -> np.ndarray:
        return self.inst_amp[self.valid]


def desa1(x, sample_rate_hz: float, smooth_teo_len: int = 1) -> DemodTrack:
    """Demodulate a (bandpass) signal with DESA-1.

    Args:
        x: Real samples, at least 5.
        sample_rate_hz: Sample rate used to convert rad/sample to Hz.
        smooth_teo_len: Odd moving-average length applied to the Teager
            energies before separation; 1 disables smoothing.

    Returns:
        DemodTrack aligned with ``x``; the first and last two samples are
        always invalid.
    """
    samples = as_samples(x)
    n_total = samples.size
    if n_total < 5:
        raise TooShortError(f"DESA-1 needs >= 5 samples, got {n_total}")

    psi_x = np.zeros(n_total)
    psi_x[1:-1] = smooth_energy(teager_interior(samples), smooth_teo_len)

    y = np.zeros(n_total)
    y[1:] = np.diff(samples)
    # psi[y[n]] needs y[n-1], so it exists for n = 2 .. N-2
    psi_y = np.zeros(n_total)
    psi_y[2:-1] = smooth_energy(teager_interior(y[1:]), smooth_teo_len)

    idx = np.arange(EDGE_SAMPLES, n_total - EDGE_SAMPLES)
    energy = psi_x[idx]
    diff_energy = psi_y[idx] + psi_y[idx + 1]

    peak_energy = float(np.max(psi_x[1:-1]))
    valid = energy > ENERGY_FLOOR_REL * peak_energy if peak_energy > 0 else np.zeros(idx.size, dtype=bool)

    safe_energy = np.where(valid, energy, 1.0)
    arg = 1.0 - diff_energy / (4.0 * safe_energy)
    excess = np.maximum(np.abs(arg) - 1.0, 0.0)
    valid &= excess <= CLAMP_TOLERANCE

    arg = np.clip(arg, -1.0, 1.0)
    denom = 1.0 - arg * arg
    valid &= denom > DENOMINATOR_FLOOR

    omega = np.arccos(arg)
    amp = np.sqrt(np.where(valid, energy, 0.0) / np.where(valid, denom, 1.0))

    inst_freq = np.zeros(n_total)
    inst_amp = np.zeros(n_total)
    mask = np.zeros(n_total, dtype=bool)
    inst_freq[idx] = np.where(valid, omega * sample_rate_hz / (2 * math.pi), 0.0)
    inst_amp[idx] = np.where(valid, amp, 0.0)
    mask[idx] = valid

    logger.debug(f"DESA-1: {int(mask.sum())}/{n_total} valid samples")
    return DemodTrack(inst_freq, inst_amp, mask, float(sample_rate_hz))


def invalidate_edges(track: DemodTrack, n_edge: int) -> DemodTrack:
    """Mask ``n_edge`` samples at each end (filter transients)."""
    if n_edge <= 0:
        return track
    valid = track.valid.copy()
    valid[:n_edge] = False
    valid[max(len(track) - n_edge, 0) :] = False
    return DemodTrack(
        np.where(valid, track.inst_freq_hz, 0.0),
        np.where(valid, track.inst_amp, 0.0),
        valid,
        track.sample_rate_hz,
    )
