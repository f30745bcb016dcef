"""Parsers for table-given structures: groups, semigroups, rectangular bands, semilattices."""

from __future__ import annotations

from typing import ClassVar

from semicat.core.exceptions import ValidationError
from semicat.core.finsemi import FiniteSemigroup, RectangularBand, semigroup_from_table
from semicat.core.groups import FiniteGroup, group_from_table
from semicat.core.semilat import Semilattice, semilattice_from_table
from semicat.parsers.formats.base import LineReader, StructureParser, read_table


class GroupParser(StructureParser):
    """``group <n>`` followed by n rows of n indices; row x, column y holds x*y."""

    keyword: ClassVar[str] = "group"
    header_arity: ClassVar[int] = 1

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> FiniteGroup:
        (n,) = args
        rows = read_table(reader, n, n, "group table row")
        if n and (rows[0] != list(range(n)) or [row[0] for row in rows] != list(range(n))):
            msg = f"line {line}: element 0 must be the identity"
            raise ValidationError(msg)
        return self.build(line, group_from_table, rows)


class SemigroupParser(StructureParser):
    """``semigroup <n>`` followed by n rows of n indices."""

    keyword: ClassVar[str] = "semigroup"
    header_arity: ClassVar[int] = 1

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> FiniteSemigroup:
        (n,) = args
        return self.build(line, semigroup_from_table, read_table(reader, n, n, "semigroup table row"))


class RectangularBandParser(StructureParser):
    """``rband <l> <r>`` on a single line."""

    keyword: ClassVar[str] = "rband"
    header_arity: ClassVar[int] = 2

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> RectangularBand:
        left, right = args
        return self.build(line, RectangularBand, left, right)


class SemilatticeParser(StructureParser):
    """``semilattice <n>`` followed by the n x n meet table."""

    keyword: ClassVar[str] = "semilattice"
    header_arity: ClassVar[int] = 1

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> Semilattice:
        (n,) = args
        return self.build(line, semilattice_from_table, read_table(reader, n, n, "meet table row"))

