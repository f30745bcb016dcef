"""Parsers for semicat structure files."""

from __future__ import annotations

from semicat.parsers.formats import (
    BipartiteGraphParser,
    GroupParser,
    LineReader,
    RectangularBandParser,
    ReesParser,
    SemigroupParser,
    SemilatticeParser,
    StrongSemilatticeParser,
    StructureParser,
)
from semicat.parsers.loader import parse_fix_set, parse_structure, parse_text

__all__ = [
    "BipartiteGraphParser",
    "GroupParser",
    "LineReader",
    "RectangularBandParser",
    "ReesParser",
    "SemigroupParser",
    "SemilatticeParser",
    "StrongSemilatticeParser",
    "StructureParser",
    "parse_fix_set",
    "parse_structure",
    "parse_text",
]
