"""Real Gabor kernels and zero-phase bandpass filtering.

The configured bandwidth is the frequency-domain standard deviation sigma_f in
Hz; the Gaussian time envelope therefore has sigma_t = fs / (2 pi sigma_f)
samples. Kernels are the cosine (real) part of the complex Gabor atom, even
symmetric, and scaled so the DTFT magnitude at the center frequency is 1.
"""

import logging
import math

import numpy as np

from ..errors import CenterAboveNyquistError, InvalidRangeError, SampleRateMismatchError
from ..wave_io import SampledSignal
from .base import DEFAULT_TRUNCATION_SIGMAS, FilterbankConfig, GaborBand

logger = logging.getLogger(__name__)


def gabor_kernel(
    center_hz: float,
    bandwidth_hz: float,
    sample_rate_hz: float,
    truncation_sigmas: float = DEFAULT_TRUNCATION_SIGMAS,
) -> GaborBand:
    """Build a peak-normalized real Gabor kernel.

    Args:
        center_hz: Center frequency, strictly between 0 and Nyquist.
        bandwidth_hz: Frequency-domain standard deviation in Hz.
        sample_rate_hz: Sample rate the kernel is designed for.
        truncation_sigmas: Half-length of the kernel in time-domain sigmas.

    Returns:
        GaborBand whose kernel has odd length ``2 * half_len + 1``.
    """
    if not 0 < center_hz < sample_rate_hz / 2:
        raise CenterAboveNyquistError(
            f"center {center_hz} Hz must lie in (0, {sample_rate_hz / 2}) Hz"
        )
    if not bandwidth_hz > 0:
        raise InvalidRangeError(f"bandwidth must be positive, got {bandwidth_hz} Hz")
    if not truncation_sigmas > 0:
        raise InvalidRangeError(f"truncation_sigmas must be positive, got {truncation_sigmas}")

    sigma_t = sample_rate_hz / (2 * math.pi * bandwidth_hz)
    half_len = int(math.ceil(truncation_sigmas * sigma_t))
    n = np.arange(-half_len, half_len + 1, dtype=np.float64)
    envelope = np.exp(-(n**2) / (2 * sigma_t**2))
    carrier = np.cos(2 * math.pi * center_hz * n / sample_rate_hz)
    # Even kernel: DTFT at the center is real and equals sum(envelope * cos^2)
    kernel = envelope * carrier / np.sum(envelope * carrier**2)

    return GaborBand(
        center_hz=float(center_hz),
        bandwidth_hz=float(bandwidth_hz),
        sample_rate_hz=float(sample_rate_hz),
        kernel=kernel,
        half_len=half_len,
    )


def build_filterbank(config: FilterbankConfig, sample_rate_hz: float | None = None) -> list[GaborBand]:
    """Build one GaborBand per configured band, in band order."""
    fs = sample_rate_hz if sample_rate_hz is not None else config.sample_rate_hz
    if fs is None:
        raise InvalidRangeError("filterbank has no sample rate; pass sample_rate_hz")
    config.check_nyquist(fs)
    bands = [gabor_kernel(c, bw, fs, config.truncation_sigmas) for c, bw in config.bands]
    logger.debug(
        f"Built {len(bands)} Gabor bands at {fs:g} Hz: "
        + ", ".join(f"{b.center_hz:g}/{b.bandwidth_hz:g} Hz ({b.num_taps} taps)" for b in bands)
    )
    return bands


def magnitude_response(band: GaborBand, freqs_hz: np.ndarray) -> np.ndarray:
    """DTFT magnitude of the band's kernel at the given frequencies."""
    n = np.arange(-band.half_len, band.half_len + 1, dtype=np.float64)
    omega = 2 * math.pi * np.atleast_1d(np.asarray(freqs_hz, dtype=np.float64)) / band.sample_rate_hz
    return np.abs(np.exp(-1j * np.outer(omega, n)) @ band.kernel)


def bandpass(signal: SampledSignal, band: GaborBand) -> SampledSignal:
    """Filter a signal through a band with zero-padded, centered convolution.

    Output sample n is aligned with input sample n; the length and sample rate
    are preserved.
    """
    if band.sample_rate_hz != signal.sample_rate_hz:
        raise SampleRateMismatchError(
            f"band built for {band.sample_rate_hz:g} Hz, signal is {signal.sample_rate_hz:g} Hz"
        )
    n = len(signal)
    if n == 0:
        return signal
    full = np.convolve(signal.samples, band.kernel)
    return SampledSignal(full[band.half_len : band.half_len + n], signal.sample_rate_hz)
