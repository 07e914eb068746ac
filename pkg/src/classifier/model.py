"""Reference model and its versioned JSON document."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigMismatchError, InputFileError, MissingClassError
from ..features import FreqHistogram, HistogramConfig
from ..filterbank import FilterbankConfig
from ..wave_io import Tag

logger = logging.getLogger(__name__)

MODEL_VERSION = 1


@dataclass(frozen=True, eq=False)
class ReferenceModel:
    """Pooled per-band voice and music frequency histograms."""

    bands: FilterbankConfig
    hist_config: HistogramConfig
    p_voice: tuple[FreqHistogram, ...]
    p_music: tuple[FreqHistogram, ...]
    provenance: dict[str, int] = field(default_factory=dict)
    smooth_teo_len: int = 1

    def __post_init__(self) -> None:
        n_bands = self.bands.num_bands
        if len(self.p_voice) != n_bands or len(self.p_music) != n_bands:
            raise ConfigMismatchError(
                f"model needs one histogram per band ({n_bands}), "
                f"got {len(self.p_voice)} voice / {len(self.p_music)} music"
            )
        for tag in Tag:
            if self.provenance.get(tag.display_name, 0) < 1:
                raise MissingClassError(f"model has no {tag.display_name} reference segments")

    @property
    def sample_rate_hz(self) -> float | None:
        return self.bands.sample_rate_hz

    def references(self, tag: Tag) -> tuple[FreqHistogram, ...]:
        return self.p_voice if tag is Tag.VOICE else self.p_music

    def to_dict(self) -> dict:
        return {
            "version": MODEL_VERSION,
            "bands": self.bands.to_dict()["bands"],
            "sample_rate_hz": self.bands.sample_rate_hz,
            "truncation_sigmas": self.bands.truncation_sigmas,
            "smooth_teo_len": self.smooth_teo_len,
            "hist_config": self.hist_config.to_dict(),
            "p_voice": [[float(p) for p in h.probs] for h in self.p_voice],
            "p_music": [[float(p) for p in h.probs] for h in self.p_music],
            "counts_voice": [[float(c) for c in h.counts] for h in self.p_voice],
            "counts_music": [[float(c) for c in h.counts] for h in self.p_music],
            "provenance": {tag.display_name: self.provenance[tag.display_name] for tag in Tag},
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReferenceModel:
        version = data.get("version")
        if version != MODEL_VERSION:
            raise ConfigMismatchError(f"unsupported model version {version!r} (expected {MODEL_VERSION})")
        bands = FilterbankConfig.from_dict(data)
        hist_config = HistogramConfig.from_dict(data["hist_config"])

        def histograms(probs_key: str, counts_key: str) -> tuple[FreqHistogram, ...]:
            out = []
            for probs, counts in zip(data[probs_key], data[counts_key]):
                probs = np.array(probs, dtype=np.float64)
                counts = np.array(counts, dtype=np.float64)
                if probs.shape != (hist_config.n_bins,):
                    raise ConfigMismatchError(f"{probs_key}: expected {hist_config.n_bins} bins")
                probs.setflags(write=False)
                counts.setflags(write=False)
                out.append(FreqHistogram(probs, hist_config, int(round(counts.sum())), counts))
            return tuple(out)

        return cls(
            bands=bands,
            hist_config=hist_config,
            p_voice=histograms("p_voice", "counts_voice"),
            p_music=histograms("p_music", "counts_music"),
            provenance={k: int(v) for k, v in data["provenance"].items()},
            smooth_teo_len=int(data.get("smooth_teo_len", 1)),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        logger.info(f"Saved reference model to {path}")

    @classmethod
    def load(cls, path: str | Path) -> ReferenceModel:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise InputFileError(f"Cannot read model file '{path}': {e}") from e
        except json.JSONDecodeError as e:
            raise InputFileError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
        try:
            return cls.from_dict(data)
        except (KeyError, TypeError) as e:
            raise InputFileError(f"{path}: malformed model document ({e})") from e
