"""Band layout registry.

To add a new layout:
1. Write a function returning a FilterbankConfig from a config dict
2. Register it in the LAYOUTS dict below
"""

import math
from typing import Any, Callable

import numpy as np

from ..errors import InvalidRangeError
from .base import DEFAULT_TRUNCATION_SIGMAS, FilterbankConfig

# Center / bandwidth pairs (Hz) of the three lowest Mel-spaced Gabor bands
PAPER_BANDS: tuple[tuple[float, float], ...] = (
    (240.0, 200.0),
    (738.0, 606.0),
    (1361.0, 1246.0),
)


def hz_to_mel(f_hz):
    return 2595.0 * np.log10(1.0 + np.asarray(f_hz, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


def paper_bands(
    sample_rate_hz: float | None = None,
    truncation_sigmas: float = DEFAULT_TRUNCATION_SIGMAS,
) -> FilterbankConfig:
    """The fixed 240/738/1361 Hz bands with 200/606/1246 Hz bandwidths."""
    return FilterbankConfig(PAPER_BANDS, sample_rate_hz, truncation_sigmas)


def mel_spaced_bands(n_bands: int, f_low_hz: float, f_high_hz: float) -> list[tuple[float, float]]:
    """Place ``n_bands`` centers equally on the Mel scale between two edges.

    The Mel interval is divided into ``n_bands + 1`` equal steps; center i sits
    on grid point i (1-based) and its bandwidth is half the Hz span between
    grid points i - 1 and i + 1.
    """
    if n_bands < 1:
        raise InvalidRangeError(f"n_bands must be >= 1, got {n_bands}")
    if not 0 <= f_low_hz < f_high_hz or not math.isfinite(f_high_hz):
        raise InvalidRangeError(f"need 0 <= f_low < f_high, got ({f_low_hz}, {f_high_hz})")

    grid_mel = np.linspace(hz_to_mel(f_low_hz), hz_to_mel(f_high_hz), n_bands + 2)
    grid_hz = mel_to_hz(grid_mel)
    return [
        (float(grid_hz[i]), float((grid_hz[i + 1] - grid_hz[i - 1]) / 2))
        for i in range(1, n_bands + 1)
    ]


def _paper_layout(config: dict[str, Any]) -> FilterbankConfig:
    return paper_bands(
        config.get("sample_rate_hz"),
        config.get("truncation_sigmas", DEFAULT_TRUNCATION_SIGMAS),
    )


def _mel_layout(config: dict[str, Any]) -> FilterbankConfig:
    bands = mel_spaced_bands(
        int(config.get("n_bands", 3)),
        float(config.get("f_low_hz", 0.0)),
        float(config.get("f_high_hz", 2607.0)),
    )
    return FilterbankConfig(
        tuple(bands),
        config.get("sample_rate_hz"),
        config.get("truncation_sigmas", DEFAULT_TRUNCATION_SIGMAS),
    )


# Layout registry - add new layouts here
LAYOUTS: dict[str, Callable[[dict[str, Any]], FilterbankConfig]] = {
    "paper": _paper_layout,
    "mel": _mel_layout,
}


def get_layout(name: str, config: dict[str, Any] | None = None) -> FilterbankConfig:
    """Get a filterbank configuration by layout name."""
    layout = LAYOUTS.get(name)
    if layout is None:
        available = ", ".join(LAYOUTS.keys())
        raise InvalidRangeError(f"Unknown band layout: '{name}'. Available: {available}")
    return layout(config or {})


def list_layouts() -> list[str]:
    """List all registered layout names."""
    return list(LAYOUTS.keys())
