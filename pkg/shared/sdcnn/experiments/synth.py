"""
`sdcnn synth`: write a [synthetic] graph as edge/feature/label text files.
"""

from schemas.config import RunConfig

from ..decorator import task
from ..errors import ConfigError
from ..graph import save_dataset
from ._common import CommandResult, load_run_dataset, run_command


def _synth(config: RunConfig, digest: str) -> CommandResult:
    if config.synthetic is None:
        raise ConfigError("synth needs a [synthetic] section")
    dataset = load_run_dataset(config, split=False)
    paths = save_dataset(dataset, config.output.dir)
    return CommandResult(outputs=list(paths.values()))


@task(name="cli.synth", tags=["cli", "graph"])
def cmd_synth(config_path, out_dir=None, seed=None, parallel=None, **_) -> int:
    """Generate the configured synthetic graph and write it as text files."""
    return run_command("synth", config_path, _synth, out_dir=out_dir, seed=seed, parallel=parallel)
