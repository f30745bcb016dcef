"""Parser for bipartite graph edge lists."""

from __future__ import annotations

from typing import ClassVar, Union

from semicat.core.bigraph import BipartiteGraph, LabelledBipartiteGraph, bigraph_from_edges, labelled_from_edges
from semicat.core.exceptions import ParseError
from semicat.parsers.formats.base import LineReader, StructureParser, to_ints


class BipartiteGraphParser(StructureParser):
    """``bigraph <|L|> <|R|>`` followed by ``<l> <r> [label]`` lines.

    Either every edge carries a label or none does; labels are kept as strings.
    """

    keyword: ClassVar[str] = "bigraph"
    header_arity: ClassVar[int] = 2

    def parse_block(
        self,
        reader: LineReader,
        args: list[int],
        line: int,
    ) -> Union[BipartiteGraph, LabelledBipartiteGraph]:
        left_size, right_size = args
        plain: list[tuple[int, int]] = []
        labelled: list[tuple[int, int, str]] = []
        while reader.numeric_line_ahead():
            number, tokens = reader.next("an edge")
            if len(tokens) not in (2, 3):
                msg = "an edge line is '<l> <r> [label]'"
                raise ParseError(msg, line=number)
            left, right = to_ints(tokens[:2], number)
            if len(tokens) == 3:
                labelled.append((left, right, tokens[2]))
            else:
                plain.append((left, right))
            if plain and labelled:
                msg = "either every edge has a label or none does"
                raise ParseError(msg, line=number)
        if labelled:
            return self.build(line, labelled_from_edges, left_size, right_size, labelled)
        return self.build(line, bigraph_from_edges, left_size, right_size, plain)
