"""
Experiment configuration schemas.

A run is described by a flat INI-style file with one section per model
below. Exactly one of [data] and [synthetic] is present:

    [synthetic]
    kind = sbm
    n_nodes = 300

    [train]
    n_hops = 2
    threshold_mode = pre
    threshold = 0.05

    [sweep]
    thresholds = 0, 0.02, 0.05, 0.1
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


ThresholdMode = Literal["none", "pre", "post"]
Activation = Literal["tanh", "relu", "identity"]
SyntheticKind = Literal["sbm", "path", "complete", "scale_free"]

# Fields written as comma-separated lists in the INI file
LIST_FIELDS = {"thresholds", "hops"}


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DataPaths(_Section):
    """Edge, feature and label files for a graph on disk."""

    edges: Path
    features: Path
    labels: Path
    directed: bool = False
    normalize_features: bool = False


class SyntheticSpec(_Section):
    """Parameters for a generated desk-scale graph."""

    kind: SyntheticKind = "sbm"
    n_nodes: int = Field(default=100, ge=1)
    n_blocks: int = Field(default=2, ge=1)
    """Number of classes (SBM communities, or contiguous id ranges for other kinds)."""
    p_in: float = Field(default=0.3, ge=0, le=1)
    p_out: float = Field(default=0.01, ge=0, le=1)
    attach: int = Field(default=2, ge=1)
    """Edges attached per new node for scale_free graphs."""
    n_features: int = Field(default=4, ge=1)
    features: Literal["class", "noise", "position"] = "class"
    signal: float = Field(default=1.0, ge=0)
    noise: float = Field(default=1.0, ge=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_sizes(self) -> "SyntheticSpec":
        if self.n_blocks > self.n_nodes:
            raise ValueError("n_blocks cannot exceed n_nodes")
        if self.kind == "scale_free" and self.attach >= self.n_nodes:
            raise ValueError("attach must be smaller than n_nodes for scale_free graphs")
        return self


class SplitConfig(_Section):
    """Stratified train/valid/test proportions."""

    train_fraction: float = Field(default=0.6, gt=0, lt=1)
    valid_fraction: float = Field(default=0.2, gt=0, lt=1)
    test_fraction: float = Field(default=0.2, gt=0, lt=1)
    seed: int = 0

    @model_validator(mode="after")
    def _check_sum(self) -> "SplitConfig":
        total = self.train_fraction + self.valid_fraction + self.test_fraction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"split fractions must sum to 1, got {total}")
        return self


class TrainConfig(_Section):
    """Model shape, thresholding and optimizer settings for one training run."""

    n_hops: int = Field(default=2, ge=0)
    threshold_mode: ThresholdMode = "none"
    threshold: float = Field(default=0.0, ge=0, le=1)
    learning_rate: float = Field(default=0.05, gt=0)
    max_epochs: int = Field(default=2000, ge=1)
    patience: int = Field(default=50, ge=1)
    seed: int = 0
    activation: Activation = "tanh"
    momentum: float = Field(default=0.0, ge=0, lt=1)
    divergence_factor: float = Field(default=1e3, gt=1)
    log_every: int = Field(default=100, ge=1)


class SweepConfig(_Section):
    """Thresholds (and hop counts for density curves) to sweep over."""

    thresholds: list[float] = Field(default_factory=lambda: [0.0])
    mode: ThresholdMode = "pre"
    hops: list[int] = Field(default_factory=lambda: [2])

    @field_validator("thresholds")
    @classmethod
    def _check_thresholds(cls, value: list[float]) -> list[float]:
        if not value:
            raise ValueError("threshold list is empty")
        if any(t < 0 or t > 1 for t in value):
            raise ValueError("thresholds must lie in [0, 1]")
        if any(b < a for a, b in zip(value, value[1:])):
            raise ValueError("thresholds must be sorted ascending")
        return value

    @field_validator("hops")
    @classmethod
    def _check_hops(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("hop list is empty")
        if any(h < 0 for h in value):
            raise ValueError("hop counts must be >= 0")
        return value


class OutputConfig(_Section):
    """Where results go."""

    dir: Path = Path("results")
    timing: bool = False
    """Write wall-clock seconds into sweep CSVs (breaks byte-identical reruns)."""
    parallel: int = Field(default=1, ge=1)


class RunConfig(BaseModel):
    """A full experiment: data source, split, training and sweep settings."""

    model_config = ConfigDict(extra="forbid")

    data: Optional[DataPaths] = None
    synthetic: Optional[SyntheticSpec] = None
    split: SplitConfig = Field(default_factory=SplitConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _check_source(self) -> "RunConfig":
        if (self.data is None) == (self.synthetic is None):
            raise ValueError("exactly one of [data] and [synthetic] must be given")
        return self

    @classmethod
    def from_sections(cls, sections: dict[str, dict[str, str]], base_dir: Path) -> "RunConfig":
        """Build from raw INI sections; relative paths resolve against base_dir."""
        raw: dict[str, dict] = {}
        for name, values in sections.items():
            parsed: dict = {}
            for key, text in values.items():
                if key in LIST_FIELDS:
                    parsed[key] = [item.strip() for item in text.split(",") if item.strip()]
                else:
                    parsed[key] = text
            raw[name] = parsed

        for key in ("edges", "features", "labels"):
            if "data" in raw and key in raw["data"]:
                raw["data"][key] = _resolve(raw["data"][key], base_dir)
        if "output" in raw and "dir" in raw["output"]:
            raw["output"]["dir"] = _resolve(raw["output"]["dir"], base_dir)

        config = cls.model_validate(raw)
        if not config.output.dir.is_absolute():
            config.output.dir = base_dir / config.output.dir
        return config

    def to_sections(self) -> dict[str, dict[str, str]]:
        """Inverse of from_sections (paths are written as stored)."""
        sections: dict[str, dict[str, str]] = {}
        for name in type(self).model_fields:
            section = getattr(self, name)
            if section is None:
                continue
            sections[name] = {
                key: _format(getattr(section, key)) for key in type(section).model_fields
            }
        return sections

    def to_ini(self) -> str:
        """Canonical INI text. Parsing it back yields an equal config."""
        lines: list[str] = []
        for name, values in self.to_sections().items():
            if lines:
                lines.append("")
            lines.append(f"[{name}]")
            lines.extend(f"{key} = {value}" for key, value in values.items())
        return "\n".join(lines) + "\n"


def _resolve(text: str, base_dir: Path) -> Path:
    path = Path(text).expanduser()
    return path if path.is_absolute() else (base_dir / path)


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ", ".join(_format(v) for v in value)
    return str(value)
