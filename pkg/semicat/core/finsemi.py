"""Finite semigroups as multiplication tables, with brute-force oracles.

This module holds the generic side of the library: validation of arbitrary
tables, the isomorphism search used as ground truth for the structured
enumerators elsewhere, Green's relations by principal ideals, and rectangular
bands together with the automorphism construction for their set extensions.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from semicat.core.exceptions import (
    ConditionViolatedError,
    NotAssociativeError,
    SemicatError,
    SizeLimitExceededError,
)
from semicat.core.groups import FiniteGroup
from semicat.utils.patterns import equality_pattern
from semicat.utils.tables import (
    ElementMap,
    Table,
    closure,
    find_nonassociative_triple,
    normalize_table,
    refine_colours,
    search_isomorphisms,
)
from semicat.vars.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)

Partition = list[frozenset[int]]


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup.

    Attributes:
        order: Number of elements
        table: ``table[x][y]`` is the index of ``x*y``
        zero: Index of the zero element, if there is one
    """

    order: int
    table: Table
    zero: Optional[int] = None

    @property
    def elements(self) -> range:
        return range(self.order)

    def multiply(self, x: int, y: int) -> int:
        return self.table[x][y]

    def is_idempotent(self, x: int) -> bool:
        return self.table[x][x] == x

    @cached_property
    def idempotents(self) -> frozenset[int]:
        return frozenset(x for x in self.elements if self.table[x][x] == x)


def _find_zero(table: Table) -> Optional[int]:
    size = len(table)
    for z in range(size):
        if all(table[z][x] == z == table[x][z] for x in range(size)):
            return z
    return None


def semigroup_from_table(rows: Iterable[Iterable[int]]) -> FiniteSemigroup:
    """Validate a table as a semigroup; the zero is detected automatically.

    Raises:
        TableShapeError: If the table is not square or has entries out of range
        NotAssociativeError: With the first failing triple
    """
    table = normalize_table(rows)
    triple = find_nonassociative_triple(table)
    if triple is not None:
        x, y, z = triple
        msg = f"Table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
        raise NotAssociativeError(msg, triple)
    return FiniteSemigroup(order=len(table), table=table, zero=_find_zero(table))


def semigroup_from_group(group: FiniteGroup) -> FiniteSemigroup:
    """View a group as a semigroup on the same indices."""
    return FiniteSemigroup(order=group.order, table=group.table, zero=_find_zero(group.table))


def left_zero(n: int) -> FiniteSemigroup:
    """The left zero semigroup ``xy = x`` on n elements."""
    return semigroup_from_table([[x] * n for x in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    """The right zero semigroup ``xy = y`` on n elements."""
    return semigroup_from_table([list(range(n)) for _ in range(n)])


def direct_product(left: FiniteSemigroup, right: FiniteSemigroup) -> FiniteSemigroup:
    """Componentwise product; the pair (s, t) has index ``s * |right| + t``."""
    size = right.order
    order = left.order * size
    table = tuple(
        tuple(left.table[x // size][y // size] * size + right.table[x % size][y % size] for y in range(order))
        for x in range(order)
    )
    return FiniteSemigroup(order=order, table=table, zero=_find_zero(table))


# Green's relations


def _classes_by_key(order: int, key: Sequence[frozenset[int]]) -> Partition:
    groups: dict[frozenset[int], list[int]] = {}
    for x in range(order):
        groups.setdefault(key[x], []).append(x)
    return sorted((frozenset(members) for members in groups.values()), key=min)


def _right_ideals(semigroup: FiniteSemigroup) -> list[frozenset[int]]:
    """``xS^1`` for every x."""
    return [frozenset(semigroup.table[x]) | {x} for x in semigroup.elements]


def _left_ideals(semigroup: FiniteSemigroup) -> list[frozenset[int]]:
    """``S^1x`` for every x."""
    return [frozenset(semigroup.table[y][x] for y in semigroup.elements) | {x} for x in semigroup.elements]


def green_R(semigroup: FiniteSemigroup) -> Partition:
    return _classes_by_key(semigroup.order, _right_ideals(semigroup))


def green_L(semigroup: FiniteSemigroup) -> Partition:
    return _classes_by_key(semigroup.order, _left_ideals(semigroup))


def green_H(semigroup: FiniteSemigroup) -> Partition:
    """Partition into H-classes, computed from principal one-sided ideals.

    ``a L b`` iff ``S^1a = S^1b`` and ``a R b`` iff ``aS^1 = bS^1``; H is their
    intersection. Classes are sorted by least member.
    """
    right, left = _right_ideals(semigroup), _left_ideals(semigroup)
    key = [right[x] | frozenset(-1 - y for y in left[x]) for x in semigroup.elements]
    return _classes_by_key(semigroup.order, key)


def idempotent_generated(semigroup: FiniteSemigroup) -> frozenset[int]:
    """The subsemigroup generated by the idempotents, as an element set."""
    return closure(semigroup.table, semigroup.idempotents)


def is_e_unitary(semigroup: FiniteSemigroup) -> bool:
    """Check that ``es`` idempotent (with e idempotent) forces s idempotent."""
    idempotents = semigroup.idempotents
    return all(
        s in idempotents for e in idempotents for s in semigroup.elements if semigroup.table[e][s] in idempotents
    )


# Isomorphism oracle


def _initial_colours(semigroup: FiniteSemigroup) -> list[tuple[bool, bool, int]]:
    sizes = {}
    for h_class in green_H(semigroup):
        for x in h_class:
            sizes[x] = len(h_class)
    return [(x == semigroup.zero, semigroup.is_idempotent(x), sizes[x]) for x in semigroup.elements]


def brute_force_isomorphisms(
    source: FiniteSemigroup,
    target: FiniteSemigroup,
    max_order: int = DEFAULT_LIMITS["max_order"],
    limit: Optional[int] = None,
) -> list[ElementMap]:
    """All multiplication-preserving bijections, sorted.

    Candidate images are pruned by zero/idempotent status and H-class size,
    refined jointly over both tables, before generator images are backtracked.

    Args:
        source: Domain semigroup
        target: Codomain semigroup
        max_order: Refuse inputs larger than this
        limit: Stop after this many maps (``limit=1`` answers existence)

    Returns:
        Image tuples, sorted; empty if the orders differ

    Raises:
        SizeLimitExceededError: If the order exceeds ``max_order``
    """
    if source.order != target.order:
        return []
    if source.order > max_order:
        msg = f"Brute-force isomorphism search refused: order {source.order} exceeds {max_order}"
        raise SizeLimitExceededError(msg, source.order, max_order)
    source_colours, target_colours = refine_colours(
        [source.table, target.table],
        [_initial_colours(source), _initial_colours(target)],
    )
    maps = search_isomorphisms(source.table, target.table, source_colours, target_colours, limit=limit)
    logger.debug("Brute-force search found %d isomorphisms on order %d", len(maps), source.order)
    return sorted(maps)


# Rectangular bands


@dataclass(frozen=True)
class RectangularBand:
    """The rectangular band L x R with ``(l, r)(l', r') = (l, r')``.

    Element ``(l, r)`` has index ``l * right_size + r``.
    """

    left_size: int
    right_size: int

    def __post_init__(self) -> None:
        if self.left_size < 1 or self.right_size < 1:
            msg = "A rectangular band needs nonempty left and right factors"
            raise SemicatError(msg)

    @property
    def order(self) -> int:
        return self.left_size * self.right_size

    def index(self, pair: tuple[int, int]) -> int:
        left, right = pair
        return left * self.right_size + right

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.right_size)

    def to_semigroup(self) -> FiniteSemigroup:
        return semigroup_from_table(
            [[self.index((self.pair(x)[0], self.pair(y)[1])) for y in range(self.order)] for x in range(self.order)],
        )


@dataclass(frozen=True)
class BandAutomorphism:
    """An automorphism ``phi_L x phi_R`` of a rectangular band."""

    band: RectangularBand
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __call__(self, pair: tuple[int, int]) -> tuple[int, int]:
        return (self.left[pair[0]], self.right[pair[1]])

    def images(self) -> ElementMap:
        """The map on element indices."""
        return tuple(self.band.index(self(self.band.pair(x))) for x in range(self.band.order))


def band_automorphisms(band: RectangularBand) -> list[BandAutomorphism]:
    """Aut(L x R) = Sym(L) x Sym(R), sorted by element map."""
    found = [
        BandAutomorphism(band, left, right)
        for left in itertools.permutations(range(band.left_size))
        for right in itertools.permutations(range(band.right_size))
    ]
    return sorted(found, key=BandAutomorphism.images)


def _projections(subband: frozenset[tuple[int, int]]) -> tuple[frozenset[int], frozenset[int]]:
    return frozenset(p[0] for p in subband), frozenset(p[1] for p in subband)


def sigma_classes(
    band: RectangularBand,
    subbands: Sequence[Iterable[tuple[int, int]]],
) -> tuple[list[int], list[int]]:
    """Label every left and right index by its sigma_L / sigma_R fingerprint.

    Two left indices are sigma_L-related when they lie in exactly the same
    projections ``B_k^L``; dually on the right.

    Returns:
        Per-index class labels ``(left_labels, right_labels)``, labels numbered by first occurrence
    """
    projections = [_projections(frozenset(subband)) for subband in subbands]
    left = [tuple(i in proj[0] for proj in projections) for i in range(band.left_size)]
    right = [tuple(j in proj[1] for proj in projections) for j in range(band.right_size)]
    return list(equality_pattern(left)), list(equality_pattern(right))


def _extend_within_classes(labels: Sequence[int], partial: dict[int, int]) -> tuple[int, ...]:
    """Extend a partial bijection to a permutation fixing every class setwise.

    Unmatched sources of a class are sent, in increasing order, to the unused
    targets of the same class in increasing order; a class without matches is
    therefore fixed pointwise.
    """
    images = list(range(len(labels)))
    for label in sorted(set(labels)):
        members = [x for x in range(len(labels)) if labels[x] == label]
        sources = [x for x in members if x not in partial]
        used = {partial[x] for x in members if x in partial}
        targets = [x for x in members if x not in used]
        for x in members:
            if x in partial:
                images[x] = partial[x]
        for x, y in zip(sources, targets):
            images[x] = y
    return tuple(images)


def rb_extension_automorphism(
    band: RectangularBand,
    subbands: Sequence[Iterable[tuple[int, int]]],
    partial: Sequence[tuple[tuple[int, int], tuple[int, int]]],
) -> BandAutomorphism:
    """Build an automorphism of ``(B; B_1, ..., B_r)`` extending a matching of tuples.

    Args:
        band: The rectangular band B
        subbands: Subrectangular bands B_k as collections of (l, r) pairs
        partial: Pairs ``((i_s, j_s), (k_s, l_s))`` to be matched

    Returns:
        ``Phi_L x Phi_R`` fixing every ``B_k`` setwise and sending each ``(i_s, j_s)`` to ``(k_s, l_s)``

    Raises:
        SemicatError: If a listed subset is not a subrectangular band
        ConditionViolatedError: Naming the first failed check: 1 and 2 for sigma_L and sigma_R,
            3 and 4 for the left and right equality patterns
    """
    subband_sets = [frozenset(subband) for subband in subbands]
    for k, subband in enumerate(subband_sets):
        left, right = _projections(subband)
        if not subband or subband != frozenset((i, j) for i in left for j in right):
            msg = f"Subset {k} is not a subrectangular band"
            raise SemicatError(msg)

    left_labels, right_labels = sigma_classes(band, subband_sets)
    sources = [pair for pair, _ in partial]
    targets = [pair for _, pair in partial]
    checks = (
        (1, all(left_labels[a[0]] == left_labels[b[0]] for a, b in partial), "left indices not sigma_L-related"),
        (2, all(right_labels[a[1]] == right_labels[b[1]] for a, b in partial), "right indices not sigma_R-related"),
        (3, equality_pattern([a[0] for a in sources]) == equality_pattern([b[0] for b in targets]), "left patterns differ"),
        (4, equality_pattern([a[1] for a in sources]) == equality_pattern([b[1] for b in targets]), "right patterns differ"),
    )
    for condition, holds, reason in checks:
        if not holds:
            msg = f"Condition ({condition}) fails: {reason}"
            raise ConditionViolatedError(msg, condition)

    phi_left = {a[0]: b[0] for a, b in partial}
    phi_right = {a[1]: b[1] for a, b in partial}
    return BandAutomorphism(
        band=band,
        left=_extend_within_classes(left_labels, phi_left),
        right=_extend_within_classes(right_labels, phi_right),
    )
