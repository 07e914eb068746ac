"""Run configuration: defaults, then a JSON file, then command-line flags."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from ..errors import InputFileError, UsageError
from ..features import HistogramConfig
from ..filterbank import DEFAULT_TRUNCATION_SIGMAS, FilterbankConfig, get_layout
from ..wave_io import DEFAULT_MIN_TAIL_S, DEFAULT_SEGMENT_LEN_S

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "MODSEP_CONFIG"

_HIST_KEYS = {"n_bins", "f_min_hz", "f_max_hz", "smoothing_alpha"}
_MEL_KEYS = {"n_bands", "f_low_hz", "f_high_hz"}


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a run.

    ``bands`` is a layout name ("paper", "mel") or an explicit list of
    ``{"center_hz": ..., "bandwidth_hz": ...}`` entries.
    """

    bands: str | list[dict[str, float]] = "paper"
    mel: dict[str, Any] = field(default_factory=lambda: {"n_bands": 3, "f_low_hz": 0.0, "f_high_hz": 2607.0})
    truncation_sigmas: float = DEFAULT_TRUNCATION_SIGMAS
    hist: dict[str, Any] = field(default_factory=lambda: HistogramConfig().to_dict())
    segment_len_s: float = DEFAULT_SEGMENT_LEN_S
    min_tail_s: float = DEFAULT_MIN_TAIL_S
    k_folds: int = 5
    ref_fraction: float = 0.2
    seed: int = 0
    smooth_teo_len: int = 1
    workers: int = 1
    log_level: str = "INFO"

    def __post_init__(self) -> None:
        if not self.segment_len_s > 0:
            raise UsageError(f"segment_len_s must be positive, got {self.segment_len_s}")
        if self.min_tail_s < 0:
            raise UsageError(f"min_tail_s must be >= 0, got {self.min_tail_s}")
        if self.k_folds < 2:
            raise UsageError(f"k_folds must be >= 2, got {self.k_folds}")
        if not 0 < self.ref_fraction < 1:
            raise UsageError(f"ref_fraction must be in (0, 1), got {self.ref_fraction}")
        if self.smooth_teo_len < 1 or self.smooth_teo_len % 2 == 0:
            raise UsageError(f"smooth_teo_len must be odd and >= 1, got {self.smooth_teo_len}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")
        if not isinstance(logging.getLevelName(str(self.log_level).upper()), int):
            raise UsageError(f"unknown log_level '{self.log_level}'")
        if unknown := set(self.hist) - _HIST_KEYS:
            raise UsageError(f"unknown hist keys: {sorted(unknown)}")
        if unknown := set(self.mel) - _MEL_KEYS:
            raise UsageError(f"unknown mel keys: {sorted(unknown)}")
        # Build once so bad band or histogram settings fail at load time.
        self.filterbank_config()
        self.histogram_config()

    def filterbank_config(self) -> FilterbankConfig:
        if isinstance(self.bands, str):
            return get_layout(self.bands, {**self.mel, "truncation_sigmas": self.truncation_sigmas})
        try:
            pairs = tuple((float(b["center_hz"]), float(b["bandwidth_hz"])) for b in self.bands)
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"bands entries need center_hz and bandwidth_hz: {e}") from e
        if not pairs:
            raise UsageError("bands list is empty")
        return FilterbankConfig(pairs, None, self.truncation_sigmas)

    def histogram_config(self) -> HistogramConfig:
        return HistogramConfig.from_dict(self.hist)

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """Copy with every non-None override applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def load_config(path: str | Path | None = None) -> RunConfig:
    """Load a RunConfig from ``path``, else from $MODSEP_CONFIG, else defaults.

    Raises:
        InputFileError: The file cannot be read or is not JSON.
        UsageError: Unknown keys or invalid values.
    """
    load_dotenv()
    path = path or os.getenv(CONFIG_ENV_VAR)
    if not path:
        return RunConfig()

    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise InputFileError(f"{path}: cannot read config: {e}") from e
    except json.JSONDecodeError as e:
        raise InputFileError(f"{path}:{e.lineno}: invalid JSON: {e.msg}") from e
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a JSON object")

    known = {f.name for f in fields(RunConfig)}
    if unknown := set(data) - known:
        raise UsageError(f"{path}: unknown config keys: {sorted(unknown)}")
    # Partial nested dicts fall back to the nested defaults.
    defaults = RunConfig()
    for key in ("hist", "mel"):
        if key in data and isinstance(data[key], dict):
            data[key] = {**getattr(defaults, key), **data[key]}

    try:
        config = RunConfig(**data)
    except TypeError as e:
        raise UsageError(f"{path}: bad config value: {e}") from e
    logger.info(f"Loaded config from {path}")
    return config
