"""Finite groups given by Cayley tables, and maps between them."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

from semicat.core.exceptions import (
    ConsistencyError,
    NoIdentityError,
    NoInverseError,
    NotAssociativeError,
    NotBijectiveError,
)
from semicat.utils.tables import (
    Table,
    compose_maps,
    find_nonassociative_triple,
    invert_map,
    is_homomorphism,
    normalize_table,
    refine_colours,
    search_isomorphisms,
)

logger = logging.getLogger(__name__)

# Orders up to which the full bijection scan is affordable as a self-check
BIJECTION_SCAN_ORDER = 6


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group with identity 0.

    Attributes:
        order: Number of elements
        table: ``table[x][y]`` is the index of ``x*y``
        inverses: ``inverses[x]`` is the inverse of ``x``
    """

    order: int
    table: Table
    inverses: tuple[int, ...]

    identity: int = 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def multiply(self, *factors: int) -> int:
        """Multiply the factors left to right (the empty product is the identity)."""
        result = self.identity
        for factor in factors:
            result = self.table[result][factor]
        return result

    def inverse(self, x: int) -> int:
        return self.inverses[x]

    def element_order(self, x: int) -> int:
        power, steps = x, 1
        while power != self.identity:
            power = self.table[power][x]
            steps += 1
        return steps

    def conjugation(self, c: int) -> GroupMap:
        """The inner automorphism ``g -> c g c^-1``."""
        c_inverse = self.inverses[c]
        return GroupMap(self, self, tuple(self.multiply(c, g, c_inverse) for g in self.elements))


@dataclass(frozen=True)
class GroupMap:
    """A map between finite groups, given by the image of every element.

    Attributes:
        source: Domain group
        target: Codomain group
        images: ``images[x]`` is the image of ``x``
    """

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    @classmethod
    def identity(cls, group: FiniteGroup) -> GroupMap:
        return cls(group, group, tuple(group.elements))

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.target.order == self.source.order

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.source.table, self.target.table, self.images)

    def compose(self, other: GroupMap) -> GroupMap:
        """Apply ``self`` first, then ``other``."""
        return GroupMap(self.source, other.target, compose_maps(self.images, other.images))

    def inverse(self) -> GroupMap:
        if not self.is_bijective:
            msg = "Only bijective group maps can be inverted"
            raise NotBijectiveError(msg)
        return GroupMap(self.target, self.source, invert_map(self.images))


def group_from_table(rows: Iterable[Iterable[int]]) -> FiniteGroup:
    """Validate a Cayley table and build a group with identity relabelled to 0.

    Args:
        rows: Square table of element indices, ``rows[x][y] = x*y``

    Returns:
        The validated group

    Raises:
        TableShapeError: If the table is not square or has entries out of range
        NoIdentityError: If no element acts as a two-sided identity
        NotAssociativeError: With the first failing triple
        NoInverseError: Naming an element without an inverse
    """
    table = normalize_table(rows)
    order = len(table)

    identity = next(
        (e for e in range(order) if all(table[e][x] == x == table[x][e] for x in range(order))),
        None,
    )
    if identity is None:
        msg = "Table has no identity element"
        raise NoIdentityError(msg)

    triple = find_nonassociative_triple(table)
    if triple is not None:
        x, y, z = triple
        msg = f"Table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
        raise NotAssociativeError(msg, triple)

    if identity != 0:
        # Swap the identity with element 0
        swap = list(range(order))
        swap[0], swap[identity] = identity, 0
        table = tuple(tuple(swap[table[swap[x]][swap[y]]] for y in range(order)) for x in range(order))

    inverses = []
    for x in range(order):
        inverse = next((y for y in range(order) if table[x][y] == 0 and table[y][x] == 0), None)
        if inverse is None:
            msg = f"Element {x} has no inverse"
            raise NoInverseError(msg, x)
        inverses.append(inverse)

    return FiniteGroup(order=order, table=table, inverses=tuple(inverses))


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group Z_n with element k standing for k mod n."""
    return group_from_table([[(x + y) % n for y in range(n)] for x in range(n)])


def group_direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    """Direct product with pair (a, b) encoded as ``a * |right| + b``."""
    size = right.order
    return group_from_table(
        [
            [left.table[x // size][y // size] * size + right.table[x % size][y % size] for y in range(left.order * size)]
            for x in range(left.order * size)
        ],
    )


def dihedral_group(n: int) -> FiniteGroup:
    """The dihedral group of order 2n: ``k`` is rotation r^k, ``n + k`` is the reflection s r^k."""

    def multiply(x: int, y: int) -> int:
        x_flip, x_rot = divmod(x, n)
        y_flip, y_rot = divmod(y, n)
        rotation = (x_rot * (-1 if y_flip else 1) + y_rot) % n
        return ((x_flip + y_flip) % 2) * n + rotation

    return group_from_table([[multiply(x, y) for y in range(2 * n)] for x in range(2 * n)])


def symmetric_group_table(n: int) -> FiniteGroup:
    """Sym(n) acting on the right, elements indexed by lexicographic order of permutations."""
    perms = list(itertools.permutations(range(n)))
    index = {perm: k for k, perm in enumerate(perms)}
    return group_from_table([[index[compose_maps(p, q)] for q in perms] for p in perms])


def _colours(groups: Sequence[FiniteGroup]) -> list[list[int]]:
    initial = [[g.element_order(x) for x in g.elements] for g in groups]
    return refine_colours([g.table for g in groups], initial)


def group_isomorphisms(source: FiniteGroup, target: FiniteGroup, limit: Optional[int] = None) -> list[GroupMap]:
    """All isomorphisms between two groups, sorted by image tuple.

    Backtracks on generator images and closes each partial assignment under
    multiplication, so only consistent branches survive.
    """
    if source.order != target.order:
        return []
    source_colours, target_colours = _colours([source, target])
    images = search_isomorphisms(source.table, target.table, source_colours, target_colours, limit=limit)
    return [GroupMap(source, target, image) for image in sorted(images)]


def group_automorphisms(group: FiniteGroup, self_check: bool = False) -> list[GroupMap]:
    """Enumerate Aut(G), identity first.

    Args:
        group: The group
        self_check: For orders up to 6, compare against the bijection scan

    Returns:
        All automorphisms, sorted by image tuple (the identity map sorts first)

    Raises:
        ConsistencyError: If the self-check disagrees with the generator search
    """
    automorphisms = group_isomorphisms(group, group)
    if self_check and group.order <= BIJECTION_SCAN_ORDER:
        oracle = brute_force_group_automorphisms(group)
        if [a.images for a in automorphisms] != [a.images for a in oracle]:
            msg = f"Automorphism search found {len(automorphisms)} maps, bijection scan found {len(oracle)}"
            raise ConsistencyError(msg)
    logger.debug("Group of order %d has %d automorphisms", group.order, len(automorphisms))
    return automorphisms


def brute_force_group_automorphisms(group: FiniteGroup) -> list[GroupMap]:
    """Filter all bijections fixing the identity down to homomorphisms."""
    found = []
    for rest in itertools.permutations(range(1, group.order)):
        images = (0, *rest)
        if is_homomorphism(group.table, group.table, images):
            found.append(GroupMap(group, group, images))
    return found


def inner_witness(automorphism: GroupMap) -> Optional[int]:
    """Return the least ``c`` with ``g -> c g c^-1`` equal to the map, or None."""
    group = automorphism.source
    if automorphism.target != group:
        return None
    for c in group.elements:
        if group.conjugation(c).images == automorphism.images:
            return c
    return None
