"""
CSV and JSON-lines writers for training and sweep results.

CSVs are UTF-8 with LF line endings; floats are written with repr() so the
same run always produces the same bytes. The first line is a comment with
the config hash.
"""

import csv
from pathlib import Path
from typing import Iterable, Optional, Sequence

from schemas.reports import Metrics, SweepRow

from .sweep import SweepReport
from .trainer import TrainHistory


SPLITS = ("train", "valid", "test")

SWEEP_HEADER = (
    ["threshold", "mode", "hops", "density", "peak_entries"]
    + [f"{split}_{name}" for split in SPLITS for name in ("accuracy", "macro_f1", "loss")]
    + ["epochs", "error"]
)

METRICS_HEADER = ["split", "accuracy", "macro_f1", "loss", "n_nodes"]
HISTORY_HEADER = ["epoch", "train_loss", "valid_loss"]
DENSITY_HEADER = ["hops", "threshold", "mode", "density", "log10_density", "nnz", "peak_entries"]
SLICE_HEADER = ["hops", "threshold", "mode", "hop", "nnz", "bound", "density"]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[dict],
    comments: Optional[Sequence[str]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        for comment in comments or []:
            f.write(f"# {comment}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row.get(key)) for key in header])
    return path


def read_csv(path: Path) -> list[dict]:
    """Rows of a CSV written by write_csv, comment lines skipped, values as strings."""
    with open(path, encoding="utf-8", newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def sweep_row_cells(row: SweepRow) -> dict:
    cells = {
        "threshold": row.threshold,
        "mode": row.mode,
        "hops": row.hops,
        "density": row.density,
        "peak_entries": row.peak_entries,
        "epochs": row.epochs,
        "error": row.error.message if row.error else None,
        "seconds": row.seconds,
    }
    for split in SPLITS:
        metrics: Optional[Metrics] = getattr(row, split)
        for name in ("accuracy", "macro_f1", "loss"):
            cells[f"{split}_{name}"] = getattr(metrics, name) if metrics else None
    return cells


def write_sweep_csv(path: Path, report: SweepReport, config_hash: str, timing: bool = False) -> Path:
    header = SWEEP_HEADER + (["seconds"] if timing else [])
    comments = [
        f"config_sha256={config_hash}",
        f"n_nodes={report.n_nodes} edge_cutoff={report.edge_cutoff!r} min_degree={report.min_degree}",
    ]
    return write_csv(path, header, (sweep_row_cells(r) for r in report.rows), comments)


def write_sweep_jsonl(path: Path, report: SweepReport) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in report.rows:
            f.write(row.model_dump_json() + "\n")
    return path


def write_metrics_csv(path: Path, metrics: dict[str, Metrics], config_hash: str) -> Path:
    rows = [{"split": split, **m.model_dump()} for split, m in metrics.items()]
    return write_csv(path, METRICS_HEADER, rows, [f"config_sha256={config_hash}"])


def write_history_csv(path: Path, history: TrainHistory, config_hash: str) -> Path:
    return write_csv(path, HISTORY_HEADER, history.rows(), [f"config_sha256={config_hash}"])
