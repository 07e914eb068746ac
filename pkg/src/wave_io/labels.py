"""Voice/music label files.

One label per line, ``start_sec,end_sec,TAG`` with TAG ``V`` or ``M``
(case-sensitive). Lines starting with ``#`` and blank lines are ignored.
"""

import logging
from pathlib import Path
from typing import Iterable

from ..errors import EmptyLabelFileError, InputFileError, OverlapError, ParseError
from .types import SegmentLabel, Tag

logger = logging.getLogger(__name__)

LABEL_HEADER = "# start_s,end_s,tag"


def _parse_line(path: str, line_no: int, line: str) -> SegmentLabel:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) != 3:
        raise ParseError(path, line_no, f"expected 'start,end,TAG', got '{line}'")
    try:
        start_s = float(parts[0])
        end_s = float(parts[1])
    except ValueError as e:
        raise ParseError(path, line_no, f"bad time value in '{line}'") from e
    try:
        tag = Tag(parts[2])
    except ValueError as e:
        raise ParseError(path, line_no, f"tag must be 'V' or 'M', got '{parts[2]}'") from e
    if start_s < 0:
        raise ParseError(path, line_no, f"start {start_s} is negative")
    if not end_s > start_s:
        raise ParseError(path, line_no, f"end {end_s} is not after start {start_s}")
    return SegmentLabel(start_s, end_s, tag)


def parse_labels(path: str | Path) -> list[SegmentLabel]:
    """Parse a label file into labels sorted by start time.

    Raises:
        InputFileError: The file cannot be read.
        ParseError: A line is malformed (message carries the line number).
        OverlapError: Two labels overlap.
        EmptyLabelFileError: No labels in the file.
    """
    path = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f"Cannot read label file '{path}': {e}") from e

    labels = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        labels.append(_parse_line(path, line_no, line))

    if not labels:
        raise EmptyLabelFileError(f"{path}: no labels")

    labels.sort(key=lambda label: label.start_s)
    for prev, cur in zip(labels, labels[1:]):
        if cur.start_s < prev.end_s:
            raise OverlapError(
                f"{path}: label {cur.start_s}-{cur.end_s} overlaps {prev.start_s}-{prev.end_s}"
            )

    logger.debug(f"Parsed {len(labels)} labels from {path}")
    return labels


def write_labels(path: str | Path, labels: Iterable[SegmentLabel]) -> None:
    """Write labels in the format read by :func:`parse_labels`."""
    lines = [LABEL_HEADER]
    lines += [f"{label.start_s!r},{label.end_s!r},{label.tag.value}" for label in labels]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
