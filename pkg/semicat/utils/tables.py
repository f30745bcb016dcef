"""Multiplication table utilities shared by the group and semigroup modules.

Tables are tuples of rows; ``table[x][y]`` is the index of the product ``x*y``.
Maps between carriers are tuples of images, applied on the right: composing
``p`` then ``q`` sends ``x`` to ``q[p[x]]``.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Hashable, Iterable, Sequence
from typing import Optional

from semicat.core.exceptions import TableShapeError

logger = logging.getLogger(__name__)

Table = tuple[tuple[int, ...], ...]
ElementMap = tuple[int, ...]


def normalize_table(rows: Iterable[Iterable[int]]) -> Table:
    """Convert nested rows into an immutable square table.

    Args:
        rows: Rows of element indices

    Returns:
        The table as a tuple of tuples

    Raises:
        TableShapeError: If the table is empty, not square or has entries out of range
    """
    table = tuple(tuple(int(entry) for entry in row) for row in rows)
    size = len(table)
    if size == 0:
        msg = "Table is empty"
        raise TableShapeError(msg)
    for x, row in enumerate(table):
        if len(row) != size:
            msg = f"Row {x} has {len(row)} entries, expected {size}"
            raise TableShapeError(msg)
        for y, entry in enumerate(row):
            if not 0 <= entry < size:
                msg = f"Entry ({x}, {y}) = {entry} is outside 0..{size - 1}"
                raise TableShapeError(msg)
    return table


def find_nonassociative_triple(table: Table) -> Optional[tuple[int, int, int]]:
    """Return the first triple (x, y, z) with (xy)z != x(yz), or None."""
    size = len(table)
    for x in range(size):
        row_x = table[x]
        for y in range(size):
            row_xy = table[row_x[y]]
            row_y = table[y]
            for z in range(size):
                if row_xy[z] != row_x[row_y[z]]:
                    return (x, y, z)
    return None


def closure(table: Table, seeds: Iterable[int]) -> frozenset[int]:
    """Return the subsemigroup generated by ``seeds``."""
    elements = set(seeds)
    frontier = list(elements)
    while frontier:
        fresh = []
        for x in frontier:
            for z in list(elements):
                for product in (table[x][z], table[z][x]):
                    if product not in elements:
                        elements.add(product)
                        fresh.append(product)
        frontier = fresh
    return frozenset(elements)


def generating_set(table: Table) -> list[int]:
    """Pick a small generating set greedily.

    Elements outside ``S*S`` can only be generators, so they are taken first;
    the rest are added in index order whenever not yet generated.
    """
    size = len(table)
    squares = {table[x][y] for x in range(size) for y in range(size)}
    ordered = [x for x in range(size) if x not in squares] + [x for x in range(size) if x in squares]
    generators: list[int] = []
    generated: frozenset[int] = frozenset()
    for x in ordered:
        if x not in generated:
            generators.append(x)
            generated = closure(table, generators)
            if len(generated) == size:
                break
    return generators


def is_homomorphism(source: Table, target: Table, images: Sequence[int]) -> bool:
    """Check ``images[xy] == images[x]images[y]`` for every pair."""
    size = len(source)
    for x in range(size):
        row = source[x]
        target_row = target[images[x]]
        for y in range(size):
            if images[row[y]] != target_row[images[y]]:
                return False
    return True


def compose_maps(first: Sequence[int], second: Sequence[int]) -> ElementMap:
    """Apply ``first`` then ``second``."""
    return tuple(second[x] for x in first)


def invert_map(images: Sequence[int]) -> ElementMap:
    """Invert a bijection given as an image tuple."""
    inverse = [0] * len(images)
    for x, y in enumerate(images):
        inverse[y] = x
    return tuple(inverse)


def refine_colours(tables: Sequence[Table], initial: Sequence[Sequence[Hashable]]) -> list[list[int]]:
    """Refine element colours of several tables jointly until stable.

    The colour of ``x`` is repeatedly replaced by its old colour together with
    the multiset of ``(colour(y), colour(xy), colour(yx))`` over all ``y``.
    Colours are isomorphism invariants, and since the refinement is run on all
    tables at once the resulting integers are comparable between tables.

    Args:
        tables: The tables to colour
        initial: One list of hashable starting colours per table

    Returns:
        One list of integer colours per table
    """
    colours = _intern([list(start) for start in initial])
    classes = len({c for row in colours for c in row})
    while True:
        signatures = []
        for table, colour in zip(tables, colours):
            size = len(table)
            signatures.append(
                [
                    (
                        colour[x],
                        tuple(sorted(Counter((colour[y], colour[table[x][y]], colour[table[y][x]]) for y in range(size)).items())),
                    )
                    for x in range(size)
                ],
            )
        refined = _intern(signatures)
        refined_classes = len({c for row in refined for c in row})
        if refined_classes == classes:
            return refined
        colours, classes = refined, refined_classes


def _intern(values: Sequence[Sequence[Hashable]]) -> list[list[int]]:
    """Replace hashable values by small integers, consistently across lists."""
    ranking = {value: index for index, value in enumerate(sorted({v for row in values for v in row}, key=repr))}
    return [[ranking[v] for v in row] for row in values]


def search_isomorphisms(
    source: Table,
    target: Table,
    source_colours: Sequence[int],
    target_colours: Sequence[int],
    limit: Optional[int] = None,
) -> list[ElementMap]:
    """Enumerate all isomorphisms between two tables.

    The search backtracks on the images of a generating set of ``source``. After
    each assignment the partial map is closed under multiplication, and any
    clash (two images for one element, a repeated image, or a colour change)
    prunes the branch. Candidate images are restricted to the generator's colour.

    Args:
        source: Source table
        target: Target table
        source_colours: Invariant colours of the source elements
        target_colours: Invariant colours of the target elements, comparable with source colours
        limit: Stop after this many isomorphisms

    Returns:
        Image tuples, in the order found (lexicographic in the generator images)
    """
    size = len(source)
    if size != len(target) or Counter(source_colours) != Counter(target_colours):
        return []

    generators = generating_set(source)
    by_colour: dict[int, list[int]] = {}
    for y in range(size):
        by_colour.setdefault(target_colours[y], []).append(y)
    logger.debug("Searching isomorphisms on %d elements with %d generators", size, len(generators))

    found: list[ElementMap] = []

    def propagate(mapping: dict[int, int], used: dict[int, int], x: int, y: int) -> bool:
        mapping[x] = y
        used[y] = x
        frontier = [x]
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(mapping):
                    for product, image in (
                        (source[a][b], target[mapping[a]][mapping[b]]),
                        (source[b][a], target[mapping[b]][mapping[a]]),
                    ):
                        known = mapping.get(product)
                        if known is not None:
                            if known != image:
                                return False
                            continue
                        if image in used or source_colours[product] != target_colours[image]:
                            return False
                        mapping[product] = image
                        used[image] = product
                        fresh.append(product)
            frontier = fresh
        return True

    def extend(mapping: dict[int, int], used: dict[int, int], depth: int) -> None:
        if limit is not None and len(found) >= limit:
            return
        if depth == len(generators):
            if len(mapping) == size:
                found.append(tuple(mapping[x] for x in range(size)))
            return
        generator = generators[depth]
        if generator in mapping:
            extend(mapping, used, depth + 1)
            return
        for candidate in by_colour.get(source_colours[generator], []):
            if candidate in used:
                continue
            trial, trial_used = dict(mapping), dict(used)
            if propagate(trial, trial_used, generator, candidate):
                extend(trial, trial_used, depth + 1)

    extend({}, {}, 0)
    return found
