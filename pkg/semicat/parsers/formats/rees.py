"""Parser for Rees matrix semigroups."""

from __future__ import annotations

from typing import ClassVar, Optional

from semicat.core.exceptions import ParseError
from semicat.core.rees import ReesMatrixSemigroup, rees_construct, sandwich_matrix
from semicat.parsers.constants import ZERO_TOKEN
from semicat.parsers.formats.base import LineReader, StructureParser, read_block, to_ints


class ReesParser(StructureParser):
    """``rees``, a group block (inline or ``include``), then ``matrix <|Lambda|> <|I|>`` and its rows.

    Matrix entries are group element indices, ``.`` standing for the zero.
    """

    keyword: ClassVar[str] = "rees"

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> ReesMatrixSemigroup:
        group = read_block(reader, allowed=("group",))
        number, tokens = reader.next("a matrix header")
        if tokens[0] != "matrix":
            msg = f"expected 'matrix <rows> <cols>', found {tokens[0]!r}"
            raise ParseError(msg, line=number)
        rows, cols = to_ints(tokens[1:], number, 2)
        entries = []
        for _ in range(rows):
            row_number, row = reader.next("a matrix row")
            if len(row) != cols:
                msg = f"expected {cols} entries, found {len(row)}"
                raise ParseError(msg, line=row_number)
            entries.append([self._entry(token, row_number) for token in row])
        matrix = self.build(number, sandwich_matrix, entries)
        return self.build(number, rees_construct, group, matrix)

    @staticmethod
    def _entry(token: str, line: int) -> Optional[int]:
        if token == ZERO_TOKEN:
            return None
        (value,) = to_ints([token], line)
        return value
