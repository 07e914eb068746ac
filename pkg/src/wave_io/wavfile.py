"""PCM-16 mono WAV reading and writing.

The reader walks the RIFF chunk list itself so it can tell a non-WAV file, an
unsupported encoding and a truncated file apart. The writer delegates to
``scipy.io.wavfile``.
"""

import logging
import struct
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from ..errors import InputFileError, NotWavError, TruncatedFileError, UnsupportedFormatError
from .types import SampledSignal

logger = logging.getLogger(__name__)

PCM_SCALE = 32768.0
WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_EXTENSIBLE = 0xFFFE
MIN_SAMPLE_RATE_HZ = 8000


def _parse_fmt(path: str, body: bytes) -> tuple[int, int, int]:
    """Return (channels, sample_rate, bits_per_sample) from a fmt chunk body."""
    if len(body) < 16:
        raise TruncatedFileError(f"{path}: fmt chunk is {len(body)} bytes, need 16")
    format_tag, channels, sample_rate, _byte_rate, _block_align, bits = struct.unpack(
        "<HHIIHH", body[:16]
    )
    if format_tag == WAVE_FORMAT_EXTENSIBLE:
        # Sub-format GUID starts with the plain format tag
        if len(body) < 26:
            raise TruncatedFileError(f"{path}: extensible fmt chunk is truncated")
        (format_tag,) = struct.unpack("<H", body[24:26])
    if format_tag != WAVE_FORMAT_PCM:
        raise UnsupportedFormatError(f"{path}: compressed or non-PCM format (tag 0x{format_tag:04x})")
    if channels != 1:
        raise UnsupportedFormatError(f"{path}: {channels} channels, only mono is supported")
    if bits != 16:
        raise UnsupportedFormatError(f"{path}: {bits}-bit samples, only 16-bit is supported")
    if sample_rate < MIN_SAMPLE_RATE_HZ:
        raise UnsupportedFormatError(
            f"{path}: sample rate {sample_rate} Hz, need at least {MIN_SAMPLE_RATE_HZ} Hz"
        )
    return channels, sample_rate, bits


def read_wav(path: str | Path) -> SampledSignal:
    """Read a PCM 16-bit mono WAV file.

    Args:
        path: WAV file path.

    Returns:
        SampledSignal with samples scaled to [-1, 1) by 1/32768.

    Raises:
        InputFileError: The file cannot be opened.
        NotWavError: Missing RIFF/WAVE magic.
        UnsupportedFormatError: Not PCM, not mono, not 16-bit, or below 8 kHz.
        TruncatedFileError: A chunk extends past the end of the file.
    """
    path = str(path)
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputFileError(f"Cannot read audio file '{path}': {e}") from e

    if data[:4] != b"RIFF" or (len(data) >= 12 and data[8:12] != b"WAVE"):
        raise NotWavError(f"{path}: not a RIFF/WAVE file")
    if len(data) < 12:
        raise TruncatedFileError(f"{path}: file ends inside the RIFF header")

    fmt: tuple[int, int, int] | None = None
    pcm: bytes | None = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id, size = struct.unpack("<4sI", data[offset : offset + 8])
        body = data[offset + 8 : offset + 8 + size]
        if len(body) < size:
            raise TruncatedFileError(
                f"{path}: chunk '{chunk_id.decode('latin-1')}' declares {size} bytes, "
                f"only {len(body)} present"
            )
        if chunk_id == b"fmt ":
            fmt = _parse_fmt(path, body)
        elif chunk_id == b"data":
            pcm = body
        offset += 8 + size + (size & 1)

    if fmt is None:
        raise TruncatedFileError(f"{path}: no fmt chunk found")
    if pcm is None:
        raise TruncatedFileError(f"{path}: no data chunk found")
    if len(pcm) % 2:
        raise TruncatedFileError(f"{path}: data chunk ends inside a sample")

    _, sample_rate, _ = fmt
    samples = np.frombuffer(pcm, dtype="<i2").astype(np.float64) / PCM_SCALE
    logger.debug(f"Read {path}: {samples.size} samples at {sample_rate} Hz")
    return SampledSignal(samples, float(sample_rate))


def write_wav(path: str | Path, signal: SampledSignal) -> None:
    """Write a signal as PCM 16-bit mono, clipping to the representable range."""
    pcm = np.clip(np.round(signal.samples * PCM_SCALE), -32768, 32767).astype(np.int16)
    wavfile.write(str(path), int(round(signal.sample_rate_hz)), pcm)
    logger.debug(f"Wrote {path}: {pcm.size} samples at {signal.sample_rate_hz:g} Hz")
