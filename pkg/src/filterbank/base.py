"""Gabor band and filterbank configuration types."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import CenterAboveNyquistError, InvalidRangeError

DEFAULT_TRUNCATION_SIGMAS = 4.0


@dataclass(frozen=True, eq=False)
class GaborBand:
    """One real, even-symmetric Gabor bandpass channel."""

    center_hz: float
    bandwidth_hz: float
    sample_rate_hz: float
    kernel: np.ndarray = field(repr=False)
    half_len: int

    def __post_init__(self) -> None:
        kernel = np.array(self.kernel, dtype=np.float64)
        kernel.setflags(write=False)
        object.__setattr__(self, "kernel", kernel)

    @property
    def num_taps(self) -> int:
        return int(self.kernel.shape[0])


@dataclass(frozen=True)
class FilterbankConfig:
    """Band list plus kernel construction settings.

    ``sample_rate_hz`` may be left ``None`` until the audio is known; call
    :meth:`for_sample_rate` to bind it.
    """

    bands: tuple[tuple[float, float], ...]
    sample_rate_hz: float | None = None
    truncation_sigmas: float = DEFAULT_TRUNCATION_SIGMAS

    def __post_init__(self) -> None:
        bands = tuple((float(c), float(bw)) for c, bw in self.bands)
        if not bands:
            raise InvalidRangeError("filterbank needs at least one band")
        for center_hz, bandwidth_hz in bands:
            if not center_hz > 0 or not bandwidth_hz > 0:
                raise InvalidRangeError(
                    f"band ({center_hz}, {bandwidth_hz}) Hz: center and bandwidth must be positive"
                )
        if not self.truncation_sigmas > 0:
            raise InvalidRangeError(f"truncation_sigmas must be positive, got {self.truncation_sigmas}")
        object.__setattr__(self, "bands", bands)
        if self.sample_rate_hz is not None:
            self.check_nyquist(self.sample_rate_hz)

    @property
    def num_bands(self) -> int:
        return len(self.bands)

    def check_nyquist(self, sample_rate_hz: float) -> None:
        """Raise if any band center is at or above Nyquist for ``sample_rate_hz``."""
        for center_hz, _ in self.bands:
            if center_hz >= sample_rate_hz / 2:
                raise CenterAboveNyquistError(
                    f"band center {center_hz} Hz is not below Nyquist ({sample_rate_hz / 2} Hz)"
                )

    def for_sample_rate(self, sample_rate_hz: float) -> FilterbankConfig:
        return FilterbankConfig(self.bands, float(sample_rate_hz), self.truncation_sigmas)

    def to_dict(self) -> dict:
        return {
            "bands": [{"center_hz": c, "bandwidth_hz": bw} for c, bw in self.bands],
            "sample_rate_hz": self.sample_rate_hz,
            "truncation_sigmas": self.truncation_sigmas,
        }

    @classmethod
    def from_dict(cls, data: dict) -> FilterbankConfig:
        return cls(
            bands=tuple((b["center_hz"], b["bandwidth_hz"]) for b in data["bands"]),
            sample_rate_hz=data.get("sample_rate_hz"),
            truncation_sigmas=data.get("truncation_sigmas", DEFAULT_TRUNCATION_SIGMAS),
        )
