"""Shared fixtures: sample rate, an independent WAV writer, small synthetic corpora."""

import wave
from pathlib import Path

import numpy as np
import pytest

from src.features import HistogramConfig
from src.filterbank import paper_bands
from src.synth import gen_corpus

FS = 22050.0


def write_pcm16(path: Path, samples: np.ndarray, sample_rate: int = int(FS), channels: int = 1) -> None:
    """WAV writer built on the stdlib ``wave`` module, used as a test oracle."""
    pcm = np.clip(np.round(np.asarray(samples) * 32768), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(2)
        w.setframerate(sample_rate)
        w.writeframes(pcm.tobytes())


@pytest.fixture
def fs() -> float:
    return FS


@pytest.fixture
def bands():
    return paper_bands()


@pytest.fixture
def hist_config() -> HistogramConfig:
    return HistogramConfig()


@pytest.fixture(scope="session")
def small_corpus():
    """10 voice + 10 music half-second segments."""
    return gen_corpus(10, 10, 0.5, FS, seed=11)
