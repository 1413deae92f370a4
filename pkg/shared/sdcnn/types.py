"""
Registry entry type for generators and commands.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Type

from pydantic import BaseModel, ValidationError

from .errors import InputError


@dataclass
class TaskMeta:
    """A registered generator or command."""

    name: str
    """Dotted name, family first ('synth.sbm', 'cli.sweep')."""

    func: Callable[..., Any]

    tags: list[str] = field(default_factory=list)

    description: str = ""
    """First docstring line of func."""

    input_schema: Optional[Type[BaseModel]] = None
    """Model the first argument is validated against, if any."""

    @property
    def family(self) -> str:
        return self.name.split(".", 1)[0] if "." in self.name else ""

    @property
    def short_name(self) -> str:
        return self.name.split(".", 1)[-1]

    def has_tag(self, tag: str) -> bool:
        return tag in self.tags

    def has_all_tags(self, tags: Iterable[str]) -> bool:
        return set(tags) <= set(self.tags)

    def has_any_tag(self, tags: Iterable[str]) -> bool:
        return not set(tags).isdisjoint(self.tags)

    def validate_input(self, data: Any) -> Any:
        """Coerce a dict into input_schema; InputError names the task on failure."""
        if self.input_schema is None or isinstance(data, self.input_schema):
            return data
        try:
            return self.input_schema.model_validate(data)
        except ValidationError as e:
            raise InputError(f"invalid input for {self.name}: {e}") from e

    def to_dict(self) -> dict:
        info = {"name": self.name, "tags": list(self.tags), "description": self.description}
        if self.input_schema is not None:
            info["input_schema"] = self.input_schema.model_json_schema()
        return info
