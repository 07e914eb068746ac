"""Discrete Teager-Kaiser energy operator.

The continuous operator psi[x(t)] = x'(t)^2 - x(t) x''(t) returns roughly
a(t)^2 w(t)^2 for an AM-FM signal a(t) cos(phi(t)); only the discrete form
psi[x[n]] = x[n]^2 - x[n+1] x[n-1] is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParamsError, TooShortError


@dataclass(frozen=True, eq=False)
class TeoTrack:
    """Teager energy of the interior samples.

    ``values[n - 1]`` is psi at input index n, for n = 1 .. N - 2.
    """

    values: np.ndarray

    def __len__(self) -> int:
        return int(self.values.shape[0])


def as_samples(x) -> np.ndarray:
    samples = np.asarray(x, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(samples)):
        raise InvalidParamsError("samples must be finite")
    return samples


def teager_interior(x: np.ndarray) -> np.ndarray:
    """psi for n = 1 .. N - 2 of an already validated array."""
    return x[1:-1] * x[1:-1] - x[2:] * x[:-2]


def teo(x) -> TeoTrack:
    """Discrete Teager energy of a sample sequence.

    Raises:
        TooShortError: Fewer than 3 samples.
    """
    samples = as_samples(x)
    if samples.size < 3:
        raise TooShortError(f"Teager operator needs >= 3 samples, got {samples.size}")
    return TeoTrack(teager_interior(samples))


def smooth_energy(values: np.ndarray, length: int) -> np.ndarray:
    """Centered moving average of odd ``length``; 1 returns the input."""
    if length < 1 or length % 2 == 0:
        raise InvalidParamsError(f"smoothing length must be odd and >= 1, got {length}")
    if length == 1 or values.size < length:
        return values
    return np.convolve(values, np.full(length, 1.0 / length), mode="same")
