"""Parser for strong semilattices of semigroups."""

from __future__ import annotations

from typing import ClassVar

from semicat.core.exceptions import ParseError
from semicat.core.finsemi import FiniteSemigroup, RectangularBand, semigroup_from_group
from semicat.core.groups import FiniteGroup
from semicat.core.semilat import StrongSemilattice, constant_sss, sss_construct
from semicat.parsers.constants import COMPONENT_KEYWORDS
from semicat.parsers.formats.base import LineReader, StructureParser, read_block, to_ints


def as_semigroup(block: object) -> FiniteSemigroup:
    """View a parsed component block as a semigroup."""
    if isinstance(block, FiniteGroup):
        return semigroup_from_group(block)
    if isinstance(block, RectangularBand):
        return block.to_semigroup()
    return block


class StrongSemilatticeParser(StructureParser):
    """A strong semilattice file.

    Layout::

        sss
        semilattice <n>      # meet table follows
        component <alpha>    # followed by a group, semigroup or rband block
        ...
        connector <alpha> <beta>
        <images of S_alpha in S_beta>
        ...

    Instead of connectors, a single ``constants <e_0> ... <e_{n-1}>`` line
    builds the constant strong semilattice on those idempotents.
    """

    keyword: ClassVar[str] = "sss"

    def parse_block(self, reader: LineReader, args: list[int], line: int) -> StrongSemilattice:
        lattice = read_block(reader, allowed=("semilattice",))
        components: dict[int, FiniteSemigroup] = {}
        connectors: dict[tuple[int, int], list[int]] = {}
        constants = None

        while not reader.at_end() and reader.peek()[1][0] in ("component", "connector", "constants"):
            number, tokens = reader.next("a component or connector")
            keyword = tokens[0]
            if keyword == "component":
                (alpha,) = to_ints(tokens[1:], number, 1)
                if alpha in components:
                    msg = f"component {alpha} given twice"
                    raise ParseError(msg, line=number)
                components[alpha] = as_semigroup(read_block(reader, allowed=COMPONENT_KEYWORDS))
            elif keyword == "connector":
                alpha, beta = to_ints(tokens[1:], number, 2)
                image_number, images = reader.next("connector images")
                connectors[(alpha, beta)] = to_ints(images, image_number)
            else:
                constants = to_ints(tokens[1:], number, lattice.order)

        if sorted(components) != list(range(lattice.order)):
            msg = f"need components 0..{lattice.order - 1}, found {sorted(components)}"
            raise ParseError(msg, line=line)
        ordered = [components[alpha] for alpha in range(lattice.order)]
        if constants is not None:
            if connectors:
                msg = "give either constants or connectors, not both"
                raise ParseError(msg, line=line)
            return self.build(line, constant_sss, lattice, ordered, constants)
        return self.build(line, sss_construct, lattice, ordered, connectors)
