"""
Exception hierarchy for sdcnn.

Every error carries a short machine-readable code and the CLI exit status it
maps to, so commands can turn any failure into a structured TaskError record.
"""

from typing import Optional

from schemas.common import TaskError


class SdcnnError(Exception):
    """Base class for all library errors."""

    code = "ERROR"
    exit_status = 1

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_task_error(self) -> TaskError:
        """Convert to the structured error record used in logs."""
        return TaskError(code=self.code, message=self.message, details=self.details or None)


class InputError(SdcnnError, ValueError):
    """Invalid arguments: shapes, indices, duplicate coordinates, empty masks."""

    code = "INVALID_INPUT"
    exit_status = 2


class DataError(InputError):
    """A data file is missing or cannot be parsed."""

    code = "DATA_ERROR"

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        details = {}
        if path is not None:
            details["path"] = str(path)
            message = f"{path}: {message}" if line is None else f"{path}:{line}: {message}"
        if line is not None:
            details["line"] = line
        super().__init__(message, details)
        self.path = path
        self.line = line


class ConfigError(SdcnnError):
    """Invalid experiment or split configuration."""

    code = "CONFIG_ERROR"
    exit_status = 1


class NumericError(SdcnnError, ArithmeticError):
    """Non-finite values or a diverging training run."""

    code = "NUMERIC_ERROR"
    exit_status = 3

    def __init__(self, message: str, epoch: Optional[int] = None):
        super().__init__(message, {"epoch": epoch} if epoch is not None else None)
        self.epoch = epoch
