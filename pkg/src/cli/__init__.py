"""Batch command-line front end.

Usage:
    python main.py synth-corpus --n-voice 100 --n-music 100 --out corpus/
    python main.py cross-validate --data-dir corpus/ --k 5 --seed 0
    python main.py build-ref --audio a.wav --labels a.csv --out model.json
    python main.py classify --audio b.wav --model model.json --out results.csv

Exit codes: 0 ok, 1 usage, 2 input file, 3 training, 4 config mismatch,
5 internal error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from ..errors import ModsepError
from .commands import (
    cmd_build_ref,
    cmd_classify,
    cmd_cross_validate,
    cmd_extract,
    cmd_synth_corpus,
    load_segments,
)
from .config import CONFIG_ENV_VAR, RunConfig, load_config

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
EXIT_INTERNAL = 5


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help=f"JSON run config (default: ${CONFIG_ENV_VAR})")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    common.add_argument("--workers", type=int, help="Featurization threads")
    common.add_argument("--segment-len", type=float, dest="segment_len_s", help="Segment length in seconds")
    common.add_argument("--bands", help="Band layout name (paper, mel)")

    inputs = _Parser(add_help=False)
    inputs.add_argument("--audio", action="append", help="Input WAV (repeatable)")
    inputs.add_argument("--labels", action="append", help="Label CSV matching each --audio (repeatable)")
    inputs.add_argument("--data-dir", help="Directory of WAV files with same-named label CSVs")

    parser = _Parser(prog="modsep", description="Voice/music segmentation from modulation features")
    tasks = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    extract = tasks.add_parser("extract", parents=[common, inputs],
                               help="Write per-segment, per-band frequency histograms")
    extract.add_argument("--out", required=True, help="Output directory")
    extract.add_argument("--tracks", action="store_true",
                         help="Also write instantaneous frequency/amplitude tracks")
    extract.add_argument("--similarity", action="store_true",
                         help="Also write per-band pairwise divergence matrices")
    extract.set_defaults(func=cmd_extract)

    build_ref = tasks.add_parser("build-ref", parents=[common, inputs],
                                 help="Train voice and music reference histograms")
    build_ref.add_argument("--out", required=True, help="Output model JSON")
    build_ref.add_argument("--export-dir", help="Also export reference histograms as CSV")
    build_ref.set_defaults(func=cmd_build_ref)

    classify = tasks.add_parser("classify", parents=[common, inputs],
                                help="Classify segments against a model")
    classify.add_argument("--model", required=True, help="Model JSON from build-ref")
    classify.add_argument("--out", help="Results file (.csv or .json); stdout JSON when omitted")
    classify.set_defaults(func=cmd_classify)

    cross = tasks.add_parser("cross-validate", parents=[common, inputs],
                             help="k-fold evaluation with disjoint reference folds")
    cross.add_argument("--k", type=int, dest="k_folds", help="Number of folds")
    cross.add_argument("--seed", type=int, help="Shuffle seed")
    cross.add_argument("--out", help="JSON report path")
    cross.set_defaults(func=cmd_cross_validate)

    synth = tasks.add_parser("synth-corpus", parents=[common],
                             help="Generate a synthetic voice/music corpus")
    synth.add_argument("--n-voice", type=int, required=True, help="Voice-like segments")
    synth.add_argument("--n-music", type=int, required=True, help="Music-like segments")
    synth.add_argument("--out", required=True, help="Output directory")
    synth.add_argument("--seed", type=int, help="Generator seed")
    synth.add_argument("--sample-rate", type=float, default=22050.0, help="Sample rate in Hz")
    synth.set_defaults(func=cmd_synth_corpus)

    return parser


def _setup_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config).with_overrides(
        workers=args.workers,
        segment_len_s=args.segment_len_s,
        bands=args.bands,
        k_folds=getattr(args, "k_folds", None),
        seed=getattr(args, "seed", None),
    )
    if not (args.verbose or args.quiet):
        logging.getLogger().setLevel(config.log_level.upper())
    return config


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    _setup_logging(args)
    try:
        config = _resolve_config(args)
        return args.func(args, config)
    except ModsepError as e:
        logger.error(str(e))
        return e.exit_code
    except Exception:
        logger.exception("Internal error")
        return EXIT_INTERNAL


__all__ = ["main", "build_parser", "RunConfig", "load_config", "load_segments"]
