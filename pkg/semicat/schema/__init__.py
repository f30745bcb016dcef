"""Schema package for semicat."""

from __future__ import annotations

from semicat.schema.config import AnalysisConfig
from semicat.schema.report import Report

__all__ = ["AnalysisConfig", "Report"]
