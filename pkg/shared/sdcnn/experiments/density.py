"""
`sdcnn density`: kernel density against threshold, one series per hop count.
No training.
"""

import math

from schemas.config import RunConfig

from ..decorator import task
from ..graph import transition_matrix
from ..kernel import build_kernel, density, slice_rows
from ..train.report import DENSITY_HEADER, SLICE_HEADER, write_csv
from ._common import CommandResult, load_run_dataset, run_command


def density_rows(config: RunConfig) -> tuple[list[dict], list[dict]]:
    """(series rows, per-slice rows) for every hop count and threshold."""
    dataset = load_run_dataset(config, split=False)
    p = transition_matrix(dataset.adjacency)
    series, slices = [], []
    for hops in config.sweep.hops:
        for t in config.sweep.thresholds:
            kernel = build_kernel(p, config.sweep.mode, t, hops)
            d = density(kernel)
            series.append({
                "hops": hops,
                "threshold": t,
                "mode": config.sweep.mode,
                "density": d,
                "log10_density": math.log10(d),
                "nnz": kernel.ledger.total_nnz,
                "peak_entries": kernel.ledger.peak_stored_entries,
            })
            slices.extend({"hops": hops, **row} for row in slice_rows(kernel))
    return series, slices


def _density(config: RunConfig, digest: str) -> CommandResult:
    series, slices = density_rows(config)
    out = config.output.dir
    comments = [f"config_sha256={digest}"]
    outputs = [
        write_csv(out / "density.csv", DENSITY_HEADER, series, comments),
        write_csv(out / "kernel_slices.csv", SLICE_HEADER, slices, comments),
    ]
    return CommandResult(outputs=outputs)


@task(name="cli.density", tags=["cli", "kernel", "csv"])
def cmd_density(config_path, out_dir=None, seed=None, parallel=None, **_) -> int:
    """Build kernels across thresholds and hop counts; write density CSVs."""
    return run_command("density", config_path, _density, out_dir=out_dir, seed=seed, parallel=parallel)
