"""
@task registry for synthetic generators and CLI commands.

    @task(name="synth.path", tags=["synthetic", "graph"], input=SyntheticSpec)
    def path(spec: SyntheticSpec) -> GraphDataset:
        ...

Generators live in the "synth" family and are dispatched by
generate_synthetic(); commands live in "cli" and are dispatched by
sdcnn.cli.main().
"""

from typing import Callable, Iterable, Optional, Type

from .types import TaskMeta


_REGISTRY: dict[str, TaskMeta] = {}

STANDARD_TAGS = frozenset({
    "graph", "kernel", "model", "train",
    "synthetic", "experiment", "cli",
    "csv", "checkpoint",
})

# Subpackages of sdcnn whose modules register tasks on import
TASK_PACKAGES = ("graph", "experiments")


def task(
    name: str,
    tags: Optional[list[str]] = None,
    input: Optional[Type] = None,
) -> Callable:
    """
    Register the decorated function under name.

    Tags must come from STANDARD_TAGS. Re-registering a name replaces the
    previous entry, which is what module reloads rely on.
    """
    tags = list(tags or [])
    unknown = set(tags) - STANDARD_TAGS
    if unknown:
        raise ValueError(f"task {name!r} uses unknown tags: {', '.join(sorted(unknown))}")

    def register(func: Callable) -> Callable:
        doc = (func.__doc__ or "").strip()
        meta = TaskMeta(
            name=name,
            func=func,
            tags=tags,
            description=doc.splitlines()[0].strip() if doc else "",
            input_schema=input,
        )
        _REGISTRY[name] = meta
        func._task_meta = meta
        return func

    return register


def get_task(name: str) -> Optional[TaskMeta]:
    return _REGISTRY.get(name)


def is_registered(meta: TaskMeta) -> bool:
    """True when meta is the live registry entry for its name."""
    return _REGISTRY.get(meta.name) is meta


def list_tasks() -> list[TaskMeta]:
    return list(_REGISTRY.values())


def family_names(family: str) -> list[str]:
    """Sorted short names in a family, e.g. ['complete', 'path', ...] for 'synth'."""
    return sorted(t.short_name for t in _REGISTRY.values() if t.family == family)


def filter_by_tag(tag: str) -> list[TaskMeta]:
    return [t for t in _REGISTRY.values() if t.has_tag(tag)]


def filter_by_tags(tags: Iterable[str], match_all: bool = True) -> list[TaskMeta]:
    """Tasks carrying all of tags, or any of them when match_all is False."""
    tags = list(tags)
    if match_all:
        return [t for t in _REGISTRY.values() if t.has_all_tags(tags)]
    return [t for t in _REGISTRY.values() if t.has_any_tag(tags)]


def clear_registry() -> None:
    _REGISTRY.clear()
