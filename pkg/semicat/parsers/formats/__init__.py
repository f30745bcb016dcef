"""Structure block parser implementations."""

from __future__ import annotations

from semicat.parsers.formats.algebra import GroupParser, RectangularBandParser, SemigroupParser, SemilatticeParser
from semicat.parsers.formats.base import LineReader, StructureParser, read_block
from semicat.parsers.formats.graphs import BipartiteGraphParser
from semicat.parsers.formats.rees import ReesParser
from semicat.parsers.formats.strong import StrongSemilatticeParser

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
    "read_block",
]
