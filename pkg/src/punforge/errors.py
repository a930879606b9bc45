from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


class ParseError(ValueError):
    """A knowledge-base file could not be read.

    ``line`` is 1-based and refers to the offending line of the source text,
    when one can be pinned down.
    """

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += source
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class RealizationError(ValueError):
    """A binding cannot be rendered in the requested grammatical role."""


class TemplateMismatch(ValueError):
    """A template was applied to a schema it does not declare."""


@dataclass(frozen=True)
class Violation:
    subject: str
    message: str
    severity: str = "error"  # "error" | "warning"
    slot: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def __str__(self) -> str:
        slot = f" [{self.slot}]" if self.slot else ""
        return f"{self.severity}: {self.subject}{slot}: {self.message}"
