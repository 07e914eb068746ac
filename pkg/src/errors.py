"""Exception hierarchy shared by every modsep package.

Each error carries the process exit code the CLI maps it to:

    1  usage / invalid parameters
    2  input files (I/O, WAV format, label parsing)
    3  training / features (degenerate segments, missing classes)
    4  configuration mismatch between model, bands and audio
    5  anything unexpected
"""


class ModsepError(Exception):
    """Base class for all modsep errors."""

    exit_code = 5


# =========================================================================
# Usage / parameter errors (exit 1)
# =========================================================================


class UsageError(ModsepError, ValueError):
    """Invalid command-line or configuration value."""

    exit_code = 1


class InvalidRangeError(UsageError):
    """Frequency range or band count is not usable."""


class CenterAboveNyquistError(UsageError):
    """A band center is not strictly between 0 and the Nyquist frequency."""


class InvalidParamsError(UsageError):
    """Synthesis parameters violate their invariants."""


class TooShortError(UsageError):
    """Sequence is too short for the requested operator."""


# =========================================================================
# Input file errors (exit 2)
# =========================================================================


class InputFileError(ModsepError, ValueError):
    """Input file missing or unreadable."""

    exit_code = 2


class NotWavError(InputFileError):
    """File does not start with a RIFF/WAVE header."""


class UnsupportedFormatError(InputFileError):
    """WAV file is not PCM 16-bit mono."""


class TruncatedFileError(InputFileError):
    """WAV file ends before its declared chunks do."""


class ParseError(InputFileError):
    """Malformed line in a label file."""

    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class OverlapError(InputFileError):
    """Two labels in one file overlap in time."""


class EmptyLabelFileError(InputFileError):
    """Label file contains no labels."""


class LabelBeyondSignalError(InputFileError):
    """A label ends after the end of the audio."""


# =========================================================================
# Training / feature errors (exit 3)
# =========================================================================


class TrainingError(ModsepError, ValueError):
    """Features or references cannot be built from the given data."""

    exit_code = 3


class NoValidSamplesError(TrainingError):
    """Every demodulated sample was masked invalid."""


class MissingClassError(TrainingError):
    """One of the tags has no reference segments."""


class NotEnoughSegmentsError(TrainingError):
    """Too few segments per tag for the requested number of folds."""


class EmptyInputError(TrainingError):
    """Nothing to accumulate."""


# =========================================================================
# Configuration mismatch (exit 4)
# =========================================================================


class ConfigMismatchError(ModsepError, ValueError):
    """Histograms, bands or models were built with incompatible settings."""

    exit_code = 4


class SampleRateMismatchError(ConfigMismatchError):
    """Signal sample rate differs from the rate a band was built for."""
