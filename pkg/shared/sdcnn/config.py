"""
Loading experiment configs from INI files.
"""

import configparser
import hashlib
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from schemas.config import RunConfig

from .errors import ConfigError


logger = logging.getLogger(__name__)


def parse_config(text: str, base_dir: Union[str, Path] = ".") -> RunConfig:
    """Parse INI text; relative paths resolve against base_dir."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"cannot parse config: {e}") from e

    sections = {name: dict(parser.items(name)) for name in parser.sections()}
    try:
        return RunConfig.from_sections(sections, Path(base_dir).resolve())
    except ValidationError as e:
        raise ConfigError(f"invalid config: {e}") from e


def load_config(
    path: Union[str, Path],
    out_dir: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
    parallel: Optional[int] = None,
) -> RunConfig:
    """
    Read a config file and apply command-line overrides.

    --seed replaces both the split and the training seed; the synthetic
    graph keeps its own seed so repeated seeds vary only the split and
    initialization.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except UnicodeDecodeError as e:
        raise ConfigError(f"config {path} is not valid UTF-8 (byte {e.start})") from None
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e

    config = parse_config(text, path.parent)
    if out_dir is not None:
        config.output.dir = Path(out_dir).resolve()
    if seed is not None:
        config.split.seed = seed
        config.train.seed = seed
    if parallel is not None:
        if parallel < 1:
            raise ConfigError(f"--parallel must be >= 1, got {parallel}")
        config.output.parallel = parallel
    logger.debug(f"Loaded config {path}")
    return config


def config_hash(config: RunConfig) -> str:
    """
    SHA-256 of the canonical INI serialization.

    The output directory and worker count do not change results and are
    left out, so reruns into different directories hash the same.
    """
    output = config.output.model_copy(update={"dir": Path("."), "parallel": 1})
    canonical = config.model_copy(update={"output": output})
    return hashlib.sha256(canonical.to_ini().encode("utf-8")).hexdigest()
