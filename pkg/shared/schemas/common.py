"""
Common schemas for all commands.
"""

from datetime import datetime
from typing import Literal, Optional
import uuid

from pydantic import BaseModel, Field


class TaskError(BaseModel):
    """Structured error information."""

    code: str  # "INVALID_INPUT", "DATA_ERROR", "CONFIG_ERROR", "NUMERIC_ERROR", ...
    message: str
    details: Optional[dict] = None


class RunLog(BaseModel):
    """
    Log entry for one CLI invocation.

    Appended as a JSON line to run_log.jsonl. This is the only output that
    carries wall-clock timestamps, so CSV results stay byte-identical
    across repeated runs.
    """

    id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    command: str
    config_hash: str

    started_at: datetime
    completed_at: datetime
    duration_ms: int

    status: Literal["completed", "failed", "partial"]
    exit_status: int = 0
    error: Optional[TaskError] = None
    outputs: list[str] = Field(default_factory=list)
