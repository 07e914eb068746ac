"""Teager energy and DESA-1 AM-FM demodulation.

Usage:
    from src.demod import teo, desa1

    energy = teo(samples).values
    track = desa1(samples, sample_rate_hz=22050)
    freqs = track.valid_frequencies()
"""

from .desa import CLAMP_TOLERANCE, ENERGY_FLOOR_REL, DemodTrack, desa1, invalidate_edges
from .teager import TeoTrack, smooth_energy, teo

__all__ = [
    "TeoTrack",
    "teo",
    "smooth_energy",
    "DemodTrack",
    "desa1",
    "invalidate_edges",
    "ENERGY_FLOOR_REL",
    "CLAMP_TOLERANCE",
]
