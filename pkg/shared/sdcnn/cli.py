"""
Command-line entry point.

    sdcnn train    --config run.ini [--out DIR] [--seed N]
    sdcnn sweep    --config sweep.ini [--out DIR] [--parallel K] [--seed N]
    sdcnn density  --config sweep.ini [--out DIR]
    sdcnn synth    --config synth.ini [--out DIR]
    sdcnn evaluate --config run.ini --checkpoint checkpoint.json [--out DIR]

Exit status: 0 success, 1 configuration error, 2 data error,
3 training diverged, 4 sweep finished with failed thresholds.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from .decorator import get_task
from .discovery import ensure_discovered


COMMANDS = {
    "train": "Train one model and write checkpoint, metrics and history",
    "sweep": "Train once per threshold and write sweep.csv",
    "density": "Kernel density per threshold and hop count (no training)",
    "synth": "Write the configured synthetic graph as text files",
    "evaluate": "Evaluate a checkpoint on the configured graph",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdcnn",
        description="Sparse diffusion-convolutional networks for node classification",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("--config", required=True, help="Path to the INI experiment config")
        sub.add_argument("--out", default=None, help="Output directory (overrides [output] dir)")
        sub.add_argument("--seed", type=int, default=None, help="Split and initialization seed")
        sub.add_argument("-v", "--verbose", action="count", default=0, help="Debug logging")
        if name == "sweep":
            sub.add_argument("--parallel", type=int, default=None, help="Thresholds trained concurrently")
        if name == "evaluate":
            sub.add_argument("--checkpoint", required=True, help="checkpoint.json written by train")

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.DEBUG if verbosity else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    ensure_discovered()
    meta = get_task(f"cli.{args.command}")
    if meta is None:
        print(f"error: command {args.command!r} is not registered", file=sys.stderr)
        return 1

    return meta.func(
        args.config,
        out_dir=args.out,
        seed=args.seed,
        parallel=getattr(args, "parallel", None),
        checkpoint=getattr(args, "checkpoint", None),
    )


if __name__ == "__main__":
    sys.exit(main())
