"""Report schema emitted by every semicat command."""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class Report(BaseModel):
    """Outcome of one command.

    Attributes:
        command (list[str]): The argv the command was run with
        inputs (dict[str, str]): Input path to the sha256 digest of its bytes
        status (str): ``ok`` or ``failed``
        results (dict[str, Any]): Command-specific results
        warnings (list[str]): Non-fatal observations
        timing (Optional[dict[str, float]]): Seconds per phase, only when requested
    """

    command: list[str] = Field(default_factory=list, description="Command echo")
    inputs: dict[str, str] = Field(default_factory=dict, description="Input digests")
    status: Literal["ok", "failed"] = Field(default="ok", description="Overall status")
    results: dict[str, Any] = Field(default_factory=dict, description="Command results")
    warnings: list[str] = Field(default_factory=list, description="Warnings")
    timing: Optional[dict[str, float]] = Field(default=None, description="Seconds per phase")

    def add_input(self, path: Path) -> None:
        """Record the digest of an input file."""
        self.inputs[str(path)] = hashlib.sha256(path.read_bytes()).hexdigest()
