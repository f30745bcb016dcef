"""Rees matrix semigroups ``M0[G; I, Lambda; P]`` over finite groups.

Elements are encoded as integers: 0 is the zero, and the triple ``(i, g, lam)``
is ``1 + (i * |G| + g) * |Lambda| + lam``. Sandwich matrices are indexed
``entries[lam][i]`` with ``None`` standing for the zero entry.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, NamedTuple, Optional

from semicat.core.bigraph import (
    LEFT,
    RIGHT,
    BipartiteGraph,
    Component,
    LabelledBipartiteGraph,
    Vertex,
    bigraph_from_edges,
    components,
    labelled_from_edges,
)
from semicat.core.exceptions import (
    IndexCollisionError,
    NotEnoughElementsError,
    NotRegularError,
    TableShapeError,
    ZeroEntryError,
)
from semicat.core.finsemi import FiniteSemigroup, green_H, idempotent_generated
from semicat.core.groups import FiniteGroup
from semicat.utils.tables import ElementMap

if TYPE_CHECKING:
    from semicat.core.reesiso import ReesIso

logger = logging.getLogger(__name__)

Entry = Optional[int]


@dataclass(frozen=True)
class SandwichMatrix:
    """A ``|Lambda| x |I|`` matrix over ``G`` with zero entries.

    Attributes:
        rows: ``|Lambda|``
        cols: ``|I|``
        entries: ``entries[lam][i]`` is a group element index or None
    """

    rows: int
    cols: int
    entries: tuple[tuple[Entry, ...], ...]

    def entry(self, lam: int, i: int) -> Entry:
        return self.entries[lam][i]

    def nonzero(self) -> list[tuple[int, int]]:
        """Positions ``(lam, i)`` of nonzero entries, row by row."""
        return [(lam, i) for lam in range(self.rows) for i in range(self.cols) if self.entries[lam][i] is not None]

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> SandwichMatrix:
        """Row ``k`` of the result is row ``row_order[k]`` here; likewise for columns."""
        return SandwichMatrix(
            len(row_order),
            len(col_order),
            tuple(tuple(self.entries[lam][i] for i in col_order) for lam in row_order),
        )


def sandwich_matrix(rows: Iterable[Iterable[Entry]]) -> SandwichMatrix:
    """Build a matrix from nested rows, ``None`` meaning zero.

    Raises:
        TableShapeError: If the matrix is empty or ragged
    """
    entries = tuple(tuple(None if e is None else int(e) for e in row) for row in rows)
    if not entries or not entries[0]:
        msg = "Sandwich matrix is empty"
        raise TableShapeError(msg)
    width = len(entries[0])
    for lam, row in enumerate(entries):
        if len(row) != width:
            msg = f"Matrix row {lam} has {len(row)} entries, expected {width}"
            raise TableShapeError(msg)
    return SandwichMatrix(len(entries), width, entries)


class Triple(NamedTuple):
    """A nonzero element ``(i, g, lam)``."""

    i: int
    g: int
    lam: int


@dataclass(frozen=True)
class ReesMatrixSemigroup:
    """The semigroup ``(I x G x Lambda) + {0}`` with the sandwich product."""

    group: FiniteGroup
    matrix: SandwichMatrix

    @property
    def index_size(self) -> int:
        """``|I|``."""
        return self.matrix.cols

    @property
    def lambda_size(self) -> int:
        """``|Lambda|``."""
        return self.matrix.rows

    @property
    def order(self) -> int:
        return self.index_size * self.group.order * self.lambda_size + 1

    def encode(self, i: int, g: int, lam: int) -> int:
        return 1 + (i * self.group.order + g) * self.lambda_size + lam

    def decode(self, x: int) -> Optional[Triple]:
        """The triple of element ``x``, or None for the zero."""
        if x == 0:
            return None
        rest, lam = divmod(x - 1, self.lambda_size)
        i, g = divmod(rest, self.group.order)
        return Triple(i, g, lam)

    def multiply(self, x: int, y: int) -> int:
        return rees_multiply(self, x, y)

    @cached_property
    def as_semigroup(self) -> FiniteSemigroup:
        """The full multiplication table, zero at index 0."""
        table = tuple(tuple(rees_multiply(self, x, y) for y in range(self.order)) for x in range(self.order))
        return FiniteSemigroup(order=self.order, table=table, zero=0)


def rees_construct(group: FiniteGroup, matrix: SandwichMatrix) -> ReesMatrixSemigroup:
    """Validate a sandwich matrix against ``group`` and build the semigroup.

    Raises:
        TableShapeError: If an entry is not an element of the group
        NotRegularError: Naming the first all-zero row or column
    """
    for lam, i in matrix.nonzero():
        entry = matrix.entry(lam, i)
        if not 0 <= entry < group.order:
            msg = f"Matrix entry ({lam}, {i}) = {entry} is not an element of a group of order {group.order}"
            raise TableShapeError(msg)
    for lam in range(matrix.rows):
        if all(entry is None for entry in matrix.entries[lam]):
            msg = f"Row {lam} of the sandwich matrix consists entirely of zeros"
            raise NotRegularError(msg, "row", lam)
    for i in range(matrix.cols):
        if all(matrix.entries[lam][i] is None for lam in range(matrix.rows)):
            msg = f"Column {i} of the sandwich matrix consists entirely of zeros"
            raise NotRegularError(msg, "column", i)
    return ReesMatrixSemigroup(group, matrix)


def rees_from_rows(group: FiniteGroup, rows: Iterable[Iterable[Entry]]) -> ReesMatrixSemigroup:
    """Shortcut for ``rees_construct(group, sandwich_matrix(rows))``."""
    return rees_construct(group, sandwich_matrix(rows))


def rees_multiply(semigroup: ReesMatrixSemigroup, x: int, y: int) -> int:
    """``(i, g, lam)(j, h, mu) = (i, g p_{lam,j} h, mu)`` if ``p_{lam,j}`` is nonzero, else 0."""
    left, right = semigroup.decode(x), semigroup.decode(y)
    if left is None or right is None:
        return 0
    sandwich = semigroup.matrix.entries[left.lam][right.i]
    if sandwich is None:
        return 0
    return semigroup.encode(left.i, semigroup.group.multiply(left.g, sandwich, right.g), right.lam)


def rees_idempotents(semigroup: ReesMatrixSemigroup) -> frozenset[int]:
    """The zero together with ``(i, p_{lam,i}^-1, lam)`` for every nonzero entry."""
    group = semigroup.group
    found = {0}
    for lam, i in semigroup.matrix.nonzero():
        found.add(semigroup.encode(i, group.inverse(semigroup.matrix.entry(lam, i)), lam))
    return frozenset(found)


# Induced graphs


def induced_graph(semigroup: ReesMatrixSemigroup) -> BipartiteGraph:
    """Gamma(P): left vertices I, right vertices Lambda, edge ``{i, lam}`` iff ``p_{lam,i}`` is nonzero."""
    return bigraph_from_edges(
        semigroup.index_size,
        semigroup.lambda_size,
        ((i, lam) for lam, i in semigroup.matrix.nonzero()),
    )


def induced_labelled_graph(semigroup: ReesMatrixSemigroup) -> LabelledBipartiteGraph:
    """Gamma(P) with every edge labelled by its entry; the alphabet is G(P)."""
    matrix = semigroup.matrix
    return labelled_from_edges(
        semigroup.index_size,
        semigroup.lambda_size,
        ((i, lam, matrix.entry(lam, i)) for lam, i in matrix.nonzero()),
    )


def gamma_tuple(semigroup: ReesMatrixSemigroup, elements: Sequence[int]) -> tuple[Vertex, ...]:
    """Flatten ``((i_1, g_1, lam_1), ...)`` to the vertex tuple ``(i_1, lam_1, ..., i_n, lam_n)``.

    Raises:
        ZeroEntryError: At the first position holding the zero
    """
    vertices: list[Vertex] = []
    for position, x in enumerate(elements):
        triple = semigroup.decode(x)
        if triple is None:
            msg = f"Entry {position} of the tuple is the zero"
            raise ZeroEntryError(msg, position)
        vertices.extend((Vertex(LEFT, triple.i), Vertex(RIGHT, triple.lam)))
    return tuple(vertices)


# Connected components


@dataclass(frozen=True)
class ReesComponentDecomposition:
    """The connected Rees components of a Rees matrix semigroup.

    Attributes:
        semigroup: The decomposed semigroup
        components: Components of Gamma(P), ordered by least vertex
        row_order: Rows of P listed component by component
        col_order: Columns of P listed component by component
        block_matrix: P with rows and columns permuted into block-diagonal form
        component_semigroups: ``M0[G; I_k, Lambda_k; P_k]`` for every component
        embeddings: For every component, the image in S of each element of ``S_k``
    """

    semigroup: ReesMatrixSemigroup
    components: tuple[Component, ...]
    row_order: tuple[int, ...]
    col_order: tuple[int, ...]
    block_matrix: SandwichMatrix
    component_semigroups: tuple[ReesMatrixSemigroup, ...]
    embeddings: tuple[ElementMap, ...]

    def component_of(self, x: int) -> Optional[int]:
        """Index of the component containing the nonzero element ``x``."""
        triple = self.semigroup.decode(x)
        if triple is None:
            return None
        return next(k for k, component in enumerate(self.components) if triple.i in component.left)


def _embedding(semigroup: ReesMatrixSemigroup, part: ReesMatrixSemigroup, component: Component) -> ElementMap:
    images = [0]
    for x in range(1, part.order):
        triple = part.decode(x)
        images.append(semigroup.encode(component.left[triple.i], triple.g, component.right[triple.lam]))
    return tuple(images)


def decompose_components(semigroup: ReesMatrixSemigroup) -> ReesComponentDecomposition:
    """Split S into connected Rees components and the block form of its matrix."""
    parts = components(induced_graph(semigroup))
    row_order = tuple(lam for part in parts for lam in part.right)
    col_order = tuple(i for part in parts for i in part.left)
    matrix = semigroup.matrix
    sub_semigroups = tuple(
        ReesMatrixSemigroup(semigroup.group, matrix.permuted(part.right, part.left)) for part in parts
    )
    logger.debug("Decomposed %dx%d matrix into %d components", matrix.rows, matrix.cols, len(parts))
    return ReesComponentDecomposition(
        semigroup=semigroup,
        components=tuple(parts),
        row_order=row_order,
        col_order=col_order,
        block_matrix=matrix.permuted(row_order, col_order),
        component_semigroups=sub_semigroups,
        embeddings=tuple(_embedding(semigroup, sub, part) for sub, part in zip(sub_semigroups, parts)),
    )


class ComponentBlock(NamedTuple):
    """Index labels and matrix of one block of a composite Rees semigroup."""

    index_labels: tuple[Hashable, ...]
    lambda_labels: tuple[Hashable, ...]
    matrix: SandwichMatrix


def compose_components(group: FiniteGroup, blocks: Sequence[ComponentBlock]) -> ReesMatrixSemigroup:
    """Glue blocks into one Rees matrix semigroup with a block-diagonal matrix.

    The global ``I`` and ``Lambda`` are the sorted unions of the block labels,
    so composing the blocks of ``decompose_components`` (labelled by their
    original indices) gives back the original matrix.

    Raises:
        IndexCollisionError: If two blocks share an index label
        NotRegularError: If some block matrix is not regular
    """
    seen_i: set[Hashable] = set()
    seen_lam: set[Hashable] = set()
    for block in blocks:
        rees_construct(group, block.matrix)
        for label in block.index_labels:
            if label in seen_i:
                msg = f"Index {label!r} appears in two components"
                raise IndexCollisionError(msg, label)
            seen_i.add(label)
        for label in block.lambda_labels:
            if label in seen_lam:
                msg = f"Index {label!r} appears in two components"
                raise IndexCollisionError(msg, label)
            seen_lam.add(label)

    index_position = {label: k for k, label in enumerate(sorted(seen_i))}
    lambda_position = {label: k for k, label in enumerate(sorted(seen_lam))}
    entries: list[list[Entry]] = [[None] * len(index_position) for _ in lambda_position]
    for block in blocks:
        for a, lam_label in enumerate(block.lambda_labels):
            for b, i_label in enumerate(block.index_labels):
                entries[lambda_position[lam_label]][index_position[i_label]] = block.matrix.entry(a, b)
    return rees_construct(group, sandwich_matrix(entries))


# Normal forms


class SpanningForest(NamedTuple):
    """Tree edges ``(parent, child)`` in breadth-first order, one tree per component."""

    roots: tuple[int, ...]
    edges: tuple[tuple[Vertex, Vertex], ...]


def spanning_forest(semigroup: ReesMatrixSemigroup) -> SpanningForest:
    """Breadth-first spanning forest of Gamma(P), rooted at the least I-vertex of each component."""
    graph = induced_graph(semigroup)
    seen: set[Vertex] = set()
    roots: list[int] = []
    edges: list[tuple[Vertex, Vertex]] = []
    for i in range(graph.left_size):
        root = Vertex(LEFT, i)
        if root in seen:
            continue
        roots.append(i)
        seen.add(root)
        queue = deque([root])
        while queue:
            vertex = queue.popleft()
            for neighbour in graph.neighbours(vertex):
                if neighbour not in seen:
                    seen.add(neighbour)
                    edges.append((vertex, neighbour))
                    queue.append(neighbour)
    return SpanningForest(tuple(roots), tuple(edges))


def graham_normalize(semigroup: ReesMatrixSemigroup) -> tuple[ReesMatrixSemigroup, ReesIso]:
    """Gauge the matrix to the identity on a spanning forest of Gamma(P).

    Along each tree edge the gauge ``u`` (on I) and ``v`` (on Lambda) is
    propagated from ``u_root = 1`` so that ``q_{lam,i} = v_lam^-1 p_{lam,i} u_i^-1``
    is the identity; the remaining entries of Q are the cycle invariants.

    Returns:
        The normalized semigroup and the isomorphism ``(1_G, 1, u, v)`` onto it
    """
    from semicat.core.reesiso import ReesIso  # noqa: PLC0415

    group, matrix = semigroup.group, semigroup.matrix
    u = [group.identity] * semigroup.index_size
    v = [group.identity] * semigroup.lambda_size
    forest = spanning_forest(semigroup)
    for parent, child in forest.edges:
        if parent.side == LEFT:
            # v_lam = p_{lam,i} u_i^-1
            v[child.index] = group.multiply(matrix.entry(child.index, parent.index), group.inverse(u[parent.index]))
        else:
            # u_i = v_lam^-1 p_{lam,i}
            u[child.index] = group.multiply(group.inverse(v[parent.index]), matrix.entry(parent.index, child.index))

    entries = tuple(
        tuple(
            None
            if matrix.entry(lam, i) is None
            else group.multiply(group.inverse(v[lam]), matrix.entry(lam, i), group.inverse(u[i]))
            for i in range(matrix.cols)
        )
        for lam in range(matrix.rows)
    )
    normalized = ReesMatrixSemigroup(group, SandwichMatrix(matrix.rows, matrix.cols, entries))
    iso = ReesIso.gauge(semigroup, normalized, tuple(u), tuple(v))
    return normalized, iso


# Named constructions


def brandt_semigroup(group: FiniteGroup, n: int) -> ReesMatrixSemigroup:
    """``B0[G; n]``: the n x n identity sandwich matrix."""
    return rees_from_rows(group, [[group.identity if lam == i else None for i in range(n)] for lam in range(n)])


def counterexample_family(group: FiniteGroup, k: int, n: int) -> ReesMatrixSemigroup:
    """The n x n matrix with ``g_m`` at ``(m, m)`` for ``m < k`` and the identity elsewhere.

    ``g_1, ..., g_k`` are the first k non-identity elements of the group.

    Raises:
        NotEnoughElementsError: If the group has fewer than k non-identity elements or ``n < k``
    """
    if k > group.order - 1:
        msg = f"Need {k} non-identity elements, group of order {group.order} has {group.order - 1}"
        raise NotEnoughElementsError(msg)
    if n < k:
        msg = f"Truncation size {n} is smaller than k = {k}"
        raise NotEnoughElementsError(msg)
    chosen = [g for g in group.elements if g != group.identity][:k]
    return rees_from_rows(
        group,
        [[chosen[i] if i == lam and i < k else group.identity for i in range(n)] for lam in range(n)],
    )


# Predicates


class StructuralPredicates(NamedTuple):
    """Brandt, purity and orthodoxy flags of a Rees matrix semigroup."""

    is_brandt: bool
    is_pure_matrix: bool
    is_pure_houghton: bool
    is_orthodox: bool
    is_pure_literal: bool


def is_orthodox(semigroup: ReesMatrixSemigroup) -> bool:
    """E(S) is closed under multiplication."""
    idempotents = rees_idempotents(semigroup)
    return all(rees_multiply(semigroup, e, f) in idempotents for e in idempotents for f in idempotents)


def is_pure_houghton(semigroup: ReesMatrixSemigroup) -> bool:
    """No two distinct elements of the idempotent-generated subsemigroup are H-related."""
    flat = semigroup.as_semigroup
    generated = idempotent_generated(flat)
    return all(len(h_class & generated) <= 1 for h_class in green_H(flat))


def structural_predicates(semigroup: ReesMatrixSemigroup) -> StructuralPredicates:
    """Evaluate every structural predicate.

    Purity up to isomorphism reads the Graham-normalized matrix: it holds iff
    every normalized entry is zero or the identity. Brandt holds iff Gamma(P)
    is a perfect matching, since such a matrix normalizes to the identity.
    """
    normalized, _ = graham_normalize(semigroup)
    identity = semigroup.group.identity
    graph = induced_graph(semigroup)
    perfect = graph.left_size == graph.right_size and all(graph.degree(vertex) == 1 for vertex in graph.vertices())
    return StructuralPredicates(
        is_brandt=perfect,
        is_pure_matrix=all(normalized.matrix.entry(lam, i) == identity for lam, i in normalized.matrix.nonzero()),
        is_pure_houghton=is_pure_houghton(semigroup),
        is_orthodox=is_orthodox(semigroup),
        is_pure_literal=all(semigroup.matrix.entry(lam, i) == identity for lam, i in semigroup.matrix.nonzero()),
    )
