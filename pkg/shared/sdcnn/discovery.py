"""
Import the modules that register tasks.

    from sdcnn.discovery import ensure_discovered
    ensure_discovered()
"""

import importlib
import logging
import pkgutil

from .decorator import TASK_PACKAGES, is_registered, list_tasks


logger = logging.getLogger(__name__)

_discovered = False


def _task_metas(module) -> list:
    return [v._task_meta for v in vars(module).values() if hasattr(v, "_task_meta")]


def discover_tasks() -> int:
    """
    Import every public module under TASK_PACKAGES.

    A module that is already imported but whose tasks are no longer in the
    registry (after clear_registry) is reloaded so they register again.
    Returns the number of tasks added.
    """
    global _discovered

    before = len(list_tasks())
    failed = 0
    for sub in TASK_PACKAGES:
        package = importlib.import_module(f"{__package__}.{sub}")
        for info in pkgutil.iter_modules(package.__path__):
            if info.name.startswith("_"):
                continue
            module_name = f"{package.__name__}.{info.name}"
            try:
                module = importlib.import_module(module_name)
                if not all(is_registered(m) for m in _task_metas(module)):
                    module = importlib.reload(module)
            except ImportError as e:
                failed += 1
                logger.warning(f"Failed to import {module_name}: {e}")
                continue
            logger.debug(f"{module_name}: {len(_task_metas(module))} tasks")

    _discovered = True
    if failed:
        logger.warning(f"Discovery finished with {failed} modules not importable")
    return len(list_tasks()) - before


def ensure_discovered() -> None:
    """Run discover_tasks() once per process (or after reset_discovery)."""
    if not _discovered:
        discover_tasks()


def reset_discovery() -> None:
    global _discovered
    _discovered = False
