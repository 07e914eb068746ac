"""Subcommand implementations.

Each ``cmd_*`` takes the parsed argparse namespace and a resolved RunConfig and
returns an exit code. Errors propagate as ModsepError for ``main`` to map.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from ..classifier import (
    ReferenceModel,
    TAG_ORDER,
    bind_sample_rate,
    build_reference,
    classify,
    cross_validate,
    demodulate,
)
from ..errors import InputFileError, NoValidSamplesError, UsageError
from ..features import FreqHistogram, build_histogram, pairwise_divergence, write_histogram_csv
from ..synth import gen_corpus
from ..wave_io import (
    LabeledSegment,
    SegmentLabel,
    extract_segments,
    grid_segments,
    parse_labels,
    read_wav,
    write_labels,
    write_wav,
)
from .config import RunConfig

logger = logging.getLogger(__name__)

MANIFEST_VERSION = 1
TRACK_CSV_HEADER = ("sample", "inst_freq_hz", "inst_amp", "valid")


def _input_pairs(args: argparse.Namespace, labels_required: bool = True) -> list[tuple[Path, Path | None]]:
    """(audio, labels) pairs from repeated --audio/--labels or from --data-dir."""
    audio = [Path(p) for p in (args.audio or [])]
    labels = [Path(p) for p in (args.labels or [])]
    data_dir = getattr(args, "data_dir", None)

    if data_dir:
        if audio or labels:
            raise UsageError("use either --data-dir or --audio/--labels, not both")
        data_dir = Path(data_dir)
        if not data_dir.is_dir():
            raise InputFileError(f"{data_dir}: not a directory")
        audio = sorted(data_dir.glob("*.wav"))
        if not audio:
            raise InputFileError(f"{data_dir}: no .wav files")
        labels = [wav.with_suffix(".csv") for wav in audio]

    if not audio:
        raise UsageError("no input audio; pass --audio or --data-dir")
    if not labels:
        if labels_required:
            raise UsageError("labels are required; pass --labels for every --audio")
        return [(wav, None) for wav in audio]
    if len(labels) != len(audio):
        raise UsageError(f"got {len(audio)} --audio but {len(labels)} --labels")
    return list(zip(audio, labels))


def load_segments(
    pairs: Sequence[tuple[Path, Path | None]],
    config: RunConfig,
) -> list[LabeledSegment]:
    """Read every file and cut it into labeled (or grid) segments, in input order."""
    segments: list[LabeledSegment] = []
    for audio_path, labels_path in pairs:
        signal = read_wav(audio_path)
        source_id = audio_path.stem
        if labels_path is None:
            found = grid_segments(signal, config.segment_len_s, source_id)
        else:
            found = extract_segments(
                signal, parse_labels(labels_path), config.segment_len_s, config.min_tail_s, source_id
            )
        logger.info(f"{audio_path}: {len(found)} segments")
        segments.extend(found)
    return segments


def _write_json(path: Path, data: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def _tag_name(segment: LabeledSegment) -> str | None:
    return segment.tag.display_name if segment.tag else None


def _write_track_csv(path: Path, track) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(TRACK_CSV_HEADER)
        for n, (freq, amp, valid) in enumerate(zip(track.inst_freq_hz, track.inst_amp, track.valid)):
            writer.writerow([n, repr(float(freq)), repr(float(amp)), int(valid)])


def _write_similarity_csv(path: Path, segments: Sequence[LabeledSegment], matrix: np.ndarray) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["segment", *(s.segment_id for s in segments)])
        for segment, row in zip(segments, matrix):
            writer.writerow([segment.segment_id, *(repr(float(v)) for v in row)])


def _log_similarity(band: int, segments: Sequence[LabeledSegment], matrix: np.ndarray) -> None:
    tags = [s.tag for s in segments]
    same, cross = [], []
    for i in range(len(segments)):
        for j in range(len(segments)):
            if i != j and tags[i] is not None and tags[j] is not None:
                (same if tags[i] is tags[j] else cross).append(matrix[i, j])
    if same and cross:
        logger.info(
            f"Band {band}: mean divergence same-tag {np.mean(same):.4f}, cross-tag {np.mean(cross):.4f}"
        )


def cmd_extract(args: argparse.Namespace, config: RunConfig) -> int:
    """Per-segment, per-band histogram CSVs plus manifest.json."""
    segments = load_segments(_input_pairs(args), config)
    if not segments:
        raise UsageError("no segments to extract; labels shorter than segment_len_s?")
    bands = bind_sample_rate(segments, config.filterbank_config())
    hist_config = config.histogram_config().resolve(bands.sample_rate_hz)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    entries = []
    per_band_hists: list[list[FreqHistogram]] = [[] for _ in range(bands.num_bands)]
    for i, segment in enumerate(segments):
        files, amplitude = [], []
        for b, track in enumerate(demodulate(segment, bands, config.smooth_teo_len)):
            try:
                hist = build_histogram(track, hist_config)
            except NoValidSamplesError as e:
                raise NoValidSamplesError(f"segment {segment.segment_id}, band {b}: {e}") from e
            per_band_hists[b].append(hist)
            name = f"seg{i:04d}_band{b}.csv"
            write_histogram_csv(out / name, hist)
            files.append(name)
            if args.tracks:
                _write_track_csv(out / f"seg{i:04d}_band{b}_track.csv", track)
            amps = track.valid_amplitudes()
            amplitude.append({"mean": float(np.mean(amps)), "std": float(np.std(amps))})
        entries.append({
            "index": i,
            "source": segment.source_id,
            "start_s": segment.start_s,
            "tag": _tag_name(segment),
            "files": files,
            "amplitude": amplitude,
        })

    if args.similarity:
        for b, hists in enumerate(per_band_hists):
            matrix = pairwise_divergence(hists)
            _write_similarity_csv(out / f"similarity_band{b}.csv", segments, matrix)
            _log_similarity(b, segments, matrix)

    _write_json(out / "manifest.json", {
        "version": MANIFEST_VERSION,
        "filterbank": bands.to_dict(),
        "hist_config": hist_config.to_dict(),
        "segment_len_s": config.segment_len_s,
        "segments": entries,
    })
    logger.info(f"Wrote {len(segments)} x {bands.num_bands} histograms to {out}")
    return 0


def cmd_build_ref(args: argparse.Namespace, config: RunConfig) -> int:
    """Train on every given segment and persist the model JSON."""
    segments = load_segments(_input_pairs(args), config)
    model = build_reference(
        segments,
        config.filterbank_config(),
        config.histogram_config(),
        config.smooth_teo_len,
        config.workers,
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    model.save(out)

    if args.export_dir:
        export = Path(args.export_dir)
        export.mkdir(parents=True, exist_ok=True)
        for tag in TAG_ORDER:
            for b, hist in enumerate(model.references(tag)):
                write_histogram_csv(export / f"band{b}_{tag.display_name.lower()}.csv", hist)
        logger.info(f"Exported reference histograms to {export}")
    return 0


def _result_row(segment: LabeledSegment, model: ReferenceModel) -> dict[str, Any]:
    row: dict[str, Any] = {
        "source": segment.source_id,
        "start_s": segment.start_s,
        "tag": _tag_name(segment),
    }
    try:
        result = classify(segment, model)
    except NoValidSamplesError as e:
        logger.warning(f"Cannot classify {segment.segment_id}: {e}")
        return {**row, "predicted": None, "score_voice": None, "score_music": None,
                "per_band": None, "error": str(e)}
    return {**row, **result.to_dict()}


def _write_rows_csv(path: Path, rows: Sequence[dict[str, Any]], n_bands: int) -> None:
    header = ["source", "start_s", "tag", "predicted", "score_voice", "score_music"]
    for b in range(n_bands):
        header += [f"band{b}_d_voice", f"band{b}_d_music"]
    header.append("error")

    def fmt(value: Any) -> str:
        if value is None:
            return ""
        return repr(float(value)) if isinstance(value, float) else str(value)

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            values = [row[key] for key in header[:6]]
            for pair in row["per_band"] or [{"d_voice": None, "d_music": None}] * n_bands:
                values += [pair["d_voice"], pair["d_music"]]
            values.append(row.get("error"))
            writer.writerow([fmt(v) for v in values])


def cmd_classify(args: argparse.Namespace, config: RunConfig) -> int:
    """Classify labeled segments, or a plain segment grid when no labels are given."""
    model = ReferenceModel.load(args.model)
    segments = load_segments(_input_pairs(args, labels_required=False), config)
    rows = [_result_row(segment, model) for segment in segments]

    if args.out is None:
        print(json.dumps({"segments": rows}, indent=2))
    elif Path(args.out).suffix.lower() == ".csv":
        _write_rows_csv(Path(args.out), rows, model.bands.num_bands)
    else:
        _write_json(Path(args.out), {"segments": rows})

    counts = {tag.display_name: sum(r["predicted"] == tag.display_name for r in rows) for tag in TAG_ORDER}
    logger.info(f"Classified {len(rows)} segments: {counts}")
    return 0


def cmd_cross_validate(args: argparse.Namespace, config: RunConfig) -> int:
    """k-fold evaluation; the text table goes to stdout, the JSON report to --out."""
    segments = load_segments(_input_pairs(args), config)
    report = cross_validate(
        segments,
        config.filterbank_config(),
        config.histogram_config(),
        k=config.k_folds,
        ref_fraction=config.ref_fraction,
        seed=config.seed,
        smooth_teo_len=config.smooth_teo_len,
        workers=config.workers,
    )
    if args.out:
        _write_json(Path(args.out), report.to_dict())
    print(report.format_table())
    return 0


def cmd_synth_corpus(args: argparse.Namespace, config: RunConfig) -> int:
    """Write a synthetic voice/music corpus as WAV files with label CSVs."""
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    corpus = gen_corpus(args.n_voice, args.n_music, config.segment_len_s, args.sample_rate, config.seed)
    for segment in corpus:
        write_wav(out / f"{segment.source_id}.wav", segment.signal)
        label = SegmentLabel(0.0, segment.signal.duration_s, segment.tag)
        write_labels(out / f"{segment.source_id}.csv", [label])
    logger.info(f"Wrote {len(corpus)} synthetic segments to {out}")
    return 0
