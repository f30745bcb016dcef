"""Bipartite graphs, labelled bipartite graphs and their isomorphisms.

The two sides are never interchangeable: an isomorphism sends left vertices to
left vertices and right vertices to right vertices.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter, deque
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from semicat.core.exceptions import NotBijectiveError, ValidationError
from semicat.utils.disjoint_set import DisjointSet
from semicat.utils.tables import compose_maps, invert_map

logger = logging.getLogger(__name__)

LEFT = "L"
RIGHT = "R"


class Vertex(NamedTuple):
    """A vertex named by its side and its index on that side."""

    side: str
    index: int


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph ``<L, R, E>`` with ``L = 0..left_size-1`` and ``R = 0..right_size-1``.

    Attributes:
        left_size: Number of left vertices
        right_size: Number of right vertices
        adjacency: Bitset of right neighbours for every left vertex
    """

    left_size: int
    right_size: int
    adjacency: tuple[int, ...]

    def has_edge(self, left: int, right: int) -> bool:
        return bool(self.adjacency[left] >> right & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(l, r)`` in lexicographic order."""
        return [(l, r) for l in range(self.left_size) for r in range(self.right_size) if self.has_edge(l, r)]

    @property
    def edge_count(self) -> int:
        return sum(bin(bits).count("1") for bits in self.adjacency)

    def vertices(self) -> list[Vertex]:
        return [Vertex(LEFT, l) for l in range(self.left_size)] + [Vertex(RIGHT, r) for r in range(self.right_size)]

    def neighbours(self, vertex: Vertex) -> list[Vertex]:
        if vertex.side == LEFT:
            return [Vertex(RIGHT, r) for r in range(self.right_size) if self.has_edge(vertex.index, r)]
        return [Vertex(LEFT, l) for l in range(self.left_size) if self.has_edge(l, vertex.index)]

    def degree(self, vertex: Vertex) -> int:
        return len(self.neighbours(vertex))

    def adjacent(self, first: Vertex, second: Vertex) -> bool:
        if first.side == second.side:
            return False
        if first.side == LEFT:
            return self.has_edge(first.index, second.index)
        return self.has_edge(second.index, first.index)

    def complement(self) -> BipartiteGraph:
        """Swap edges and non-edges between L and R."""
        full = (1 << self.right_size) - 1
        return BipartiteGraph(self.left_size, self.right_size, tuple(full ^ bits for bits in self.adjacency))


def bigraph_from_edges(left_size: int, right_size: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Build a graph from ``(l, r)`` pairs.

    Raises:
        ValidationError: If a side is empty or an edge is out of range
    """
    if left_size < 1 or right_size < 1:
        msg = f"Both sides must be nonempty, got |L|={left_size}, |R|={right_size}"
        raise ValidationError(msg)
    adjacency = [0] * left_size
    for left, right in edges:
        if not (0 <= left < left_size and 0 <= right < right_size):
            msg = f"Edge ({left}, {right}) is outside {left_size} x {right_size}"
            raise ValidationError(msg)
        adjacency[left] |= 1 << right
    return BipartiteGraph(left_size, right_size, tuple(adjacency))


@dataclass(frozen=True)
class LabelledBipartiteGraph:
    """A bipartite graph with a surjective edge labelling onto ``alphabet``.

    Attributes:
        graph: The underlying graph
        labels: Label index of every edge, aligned with ``graph.edges()``
        alphabet: The label symbols; ``labels`` index into it
    """

    graph: BipartiteGraph
    labels: tuple[int, ...]
    alphabet: tuple[Hashable, ...]

    def label(self, left: int, right: int) -> Optional[Hashable]:
        """The symbol on edge ``(l, r)``, or None if there is no edge."""
        lookup = dict(zip(self.graph.edges(), self.labels))
        index = lookup.get((left, right))
        return None if index is None else self.alphabet[index]

    def label_map(self) -> dict[tuple[int, int], Hashable]:
        return {edge: self.alphabet[index] for edge, index in zip(self.graph.edges(), self.labels)}


def labelled_from_edges(
    left_size: int,
    right_size: int,
    edges: Iterable[tuple[int, int, Hashable]],
) -> LabelledBipartiteGraph:
    """Build a labelled graph from ``(l, r, symbol)`` triples; the alphabet is the set of symbols used.

    Raises:
        ValidationError: If an edge is repeated with a different label, or the graph is invalid
    """
    labelled: dict[tuple[int, int], Hashable] = {}
    for left, right, symbol in edges:
        if labelled.setdefault((left, right), symbol) != symbol:
            msg = f"Edge ({left}, {right}) carries two labels"
            raise ValidationError(msg)
    graph = bigraph_from_edges(left_size, right_size, labelled)
    alphabet = tuple(sorted(set(labelled.values()), key=repr))
    position = {symbol: k for k, symbol in enumerate(alphabet)}
    return LabelledBipartiteGraph(graph, tuple(position[labelled[edge]] for edge in graph.edges()), alphabet)


AnyGraph = Union[BipartiteGraph, LabelledBipartiteGraph]


def _plain(graph: AnyGraph) -> BipartiteGraph:
    return graph.graph if isinstance(graph, LabelledBipartiteGraph) else graph


def _symbols(graph: AnyGraph) -> Optional[dict[tuple[int, int], Hashable]]:
    return graph.label_map() if isinstance(graph, LabelledBipartiteGraph) else None


@dataclass(frozen=True)
class BipartiteIso:
    """A side-preserving bijection between the vertex sets of two bipartite graphs."""

    left_map: tuple[int, ...]
    right_map: tuple[int, ...]

    def __call__(self, vertex: Vertex) -> Vertex:
        images = self.left_map if vertex.side == LEFT else self.right_map
        return Vertex(vertex.side, images[vertex.index])

    @classmethod
    def identity(cls, graph: AnyGraph) -> BipartiteIso:
        plain = _plain(graph)
        return cls(tuple(range(plain.left_size)), tuple(range(plain.right_size)))

    def compose(self, other: BipartiteIso) -> BipartiteIso:
        """Apply ``self`` first, then ``other``."""
        return BipartiteIso(compose_maps(self.left_map, other.left_map), compose_maps(self.right_map, other.right_map))

    def inverse(self) -> BipartiteIso:
        return BipartiteIso(invert_map(self.left_map), invert_map(self.right_map))

    def preserves(self, source: AnyGraph, target: AnyGraph, respect_labels: bool = False) -> bool:
        """Check the edge (and optionally label) condition exhaustively."""
        first, second = _plain(source), _plain(target)
        if (first.left_size, first.right_size) != (second.left_size, second.right_size):
            return False
        for l, r in itertools.product(range(first.left_size), range(first.right_size)):
            if first.has_edge(l, r) != second.has_edge(self.left_map[l], self.right_map[r]):
                return False
        if respect_labels:
            source_labels, target_labels = _symbols(source) or {}, _symbols(target) or {}
            return all(target_labels.get((self.left_map[l], self.right_map[r])) == s for (l, r), s in source_labels.items())
        return True


# Components


class Component(NamedTuple):
    """A connected component: its left and right vertices and the induced subgraph.

    The induced subgraph indexes the vertices of each side in increasing order.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    graph: BipartiteGraph


def components(graph: AnyGraph) -> list[Component]:
    """Split the vertex set into connected components, ordered by least vertex.

    Left vertices come before right vertices in the vertex order, so every
    component with a left vertex is ordered by its least left index.
    """
    plain = _plain(graph)
    offset = plain.left_size
    classes = DisjointSet(plain.left_size + plain.right_size)
    for l, r in plain.edges():
        classes.union(l, offset + r)

    found = []
    for members in classes.classes():
        left = tuple(x for x in members if x < offset)
        right = tuple(x - offset for x in members if x >= offset)
        adjacency = tuple(
            sum(1 << k for k, r in enumerate(right) if plain.has_edge(l, r)) for l in left
        )
        found.append(Component(left, right, BipartiteGraph(len(left), len(right), adjacency)))
    logger.debug("Graph %dx%d has %d components", plain.left_size, plain.right_size, len(found))
    return found


# Refinement


def _refine(graphs: Sequence[AnyGraph], use_labels: bool) -> list[dict[Vertex, int]]:
    """Jointly refine vertex colours of several graphs to a stable partition.

    A vertex starts with its side and degree; each round appends the multiset
    of (edge label, neighbour colour) over its neighbours.
    """
    labellings = [(_symbols(g) if use_labels else None) or {} for g in graphs]
    plains = [_plain(g) for g in graphs]

    def edge_key(labels: Mapping[tuple[int, int], Hashable], vertex: Vertex, neighbour: Vertex) -> str:
        edge = (vertex.index, neighbour.index) if vertex.side == LEFT else (neighbour.index, vertex.index)
        return repr(labels.get(edge))

    colours: list[dict[Vertex, Hashable]] = [
        {v: (v.side, plain.degree(v)) for v in plain.vertices()} for plain in plains
    ]
    classes = len({c for colour in colours for c in colour.values()})
    while True:
        signatures = []
        for plain, labels, colour in zip(plains, labellings, colours):
            signatures.append(
                {
                    v: (
                        colour[v],
                        tuple(sorted(Counter((edge_key(labels, v, w), colour[w]) for w in plain.neighbours(v)).items(), key=repr)),
                    )
                    for v in plain.vertices()
                },
            )
        ranking = {sig: k for k, sig in enumerate(sorted({s for sig in signatures for s in sig.values()}, key=repr))}
        refined = [{v: ranking[s] for v, s in sig.items()} for sig in signatures]
        refined_classes = len(ranking)
        if refined_classes == classes:
            return refined
        colours, classes = refined, refined_classes


def refine_partition(graph: AnyGraph) -> list[frozenset[Vertex]]:
    """Coarsest stable partition refining side, degree and (labelled) neighbourhoods.

    Labels take part when ``graph`` is labelled. Classes are sorted by least vertex.

    Returns:
        The partition as frozensets of vertices
    """
    (colour,) = _refine([graph], use_labels=True)
    groups: dict[int, set[Vertex]] = {}
    for vertex, c in colour.items():
        groups.setdefault(c, set()).add(vertex)
    return sorted((frozenset(members) for members in groups.values()), key=min)


def tau_classes(graph: AnyGraph) -> list[tuple[int, ...]]:
    """Group right vertices adjacent to the same left vertices with the same labels."""
    plain, labels = _plain(graph), _symbols(graph) or {}
    groups: dict[tuple[tuple[int, str], ...], list[int]] = {}
    for r in range(plain.right_size):
        key = tuple((l, repr(labels.get((l, r)))) for l in range(plain.left_size) if plain.has_edge(l, r))
        groups.setdefault(key, []).append(r)
    return sorted(tuple(members) for members in groups.values())


def side_pattern(vertices: Sequence[Vertex]) -> tuple[str, ...]:
    """The sigma_{Gamma,n} class of a vertex tuple: which side each entry lies on."""
    return tuple(vertex.side for vertex in vertices)


# Isomorphisms


def _search_order(graph: BipartiteGraph) -> list[Vertex]:
    """Breadth-first order, each component started from its least vertex."""
    seen: set[Vertex] = set()
    order = []
    for start in graph.vertices():
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            vertex = queue.popleft()
            order.append(vertex)
            for neighbour in graph.neighbours(vertex):
                if neighbour not in seen:
                    seen.add(neighbour)
                    queue.append(neighbour)
    return order


def bigraph_isomorphisms(
    source: AnyGraph,
    target: AnyGraph,
    respect_labels: bool = False,
    limit: Optional[int] = None,
) -> list[BipartiteIso]:
    """All side-preserving isomorphisms, in search order.

    Vertices of ``source`` are matched breadth-first; candidates must share the
    refined colour, and each assignment is checked against every vertex
    already placed on the other side (edges and, if requested, labels).

    Args:
        source: Domain graph
        target: Codomain graph
        respect_labels: Also preserve edge labels; labelled graphs over different alphabets are never isomorphic
        limit: Stop after this many isomorphisms

    Returns:
        The isomorphisms found, deterministic for fixed inputs
    """
    first, second = _plain(source), _plain(target)
    if (first.left_size, first.right_size) != (second.left_size, second.right_size):
        return []
    if first.edge_count != second.edge_count:
        return []
    source_labels = _symbols(source) if respect_labels else None
    target_labels = _symbols(target) if respect_labels else None
    if respect_labels:
        if (source_labels is None) != (target_labels is None):
            return []
        if source_labels is not None and set(source.alphabet) != set(target.alphabet):
            return []

    source_colour, target_colour = _refine([source, target], use_labels=respect_labels)
    if Counter(source_colour.values()) != Counter(target_colour.values()):
        return []
    by_colour: dict[int, list[Vertex]] = {}
    for vertex in second.vertices():
        by_colour.setdefault(target_colour[vertex], []).append(vertex)

    order = _search_order(first)
    mapping: dict[Vertex, Vertex] = {}
    used: set[Vertex] = set()
    found: list[BipartiteIso] = []

    def label_at(labels: Optional[Mapping[tuple[int, int], Hashable]], left: Vertex, right: Vertex) -> Optional[Hashable]:
        return None if labels is None else labels.get((left.index, right.index))

    def consistent(vertex: Vertex, image: Vertex) -> bool:
        for placed, placed_image in mapping.items():
            if placed.side == vertex.side:
                continue
            if first.adjacent(vertex, placed) != second.adjacent(image, placed_image):
                return False
            if source_labels is not None and first.adjacent(vertex, placed):
                left, right = (vertex, placed) if vertex.side == LEFT else (placed, vertex)
                left_image, right_image = (image, placed_image) if vertex.side == LEFT else (placed_image, image)
                if label_at(source_labels, left, right) != label_at(target_labels, left_image, right_image):
                    return False
        return True

    def extend(depth: int) -> None:
        if limit is not None and len(found) >= limit:
            return
        if depth == len(order):
            found.append(
                BipartiteIso(
                    tuple(mapping[Vertex(LEFT, l)].index for l in range(first.left_size)),
                    tuple(mapping[Vertex(RIGHT, r)].index for r in range(first.right_size)),
                ),
            )
            return
        vertex = order[depth]
        for image in by_colour.get(source_colour[vertex], []):
            if image in used or not consistent(vertex, image):
                continue
            mapping[vertex] = image
            used.add(image)
            extend(depth + 1)
            del mapping[vertex]
            used.discard(image)

    extend(0)
    logger.debug("Found %d bipartite isomorphisms", len(found))
    return found


def bigraph_iso(source: AnyGraph, target: AnyGraph, respect_labels: bool = False) -> Optional[BipartiteIso]:
    """Return an isomorphism if one exists, else None."""
    found = bigraph_isomorphisms(source, target, respect_labels=respect_labels, limit=1)
    return found[0] if found else None


def bigraph_automorphisms(graph: AnyGraph, respect_labels: bool = False) -> list[BipartiteIso]:
    """Aut of a graph, sorted with the identity first."""
    return sorted(
        bigraph_isomorphisms(graph, graph, respect_labels=respect_labels),
        key=lambda iso: (iso.left_map, iso.right_map),
    )


def brute_force_bigraph_isomorphisms(
    source: AnyGraph,
    target: AnyGraph,
    respect_labels: bool = False,
) -> list[BipartiteIso]:
    """Scan every pair of side permutations; the oracle for small graphs."""
    first, second = _plain(source), _plain(target)
    if (first.left_size, first.right_size) != (second.left_size, second.right_size):
        return []
    if respect_labels and isinstance(source, LabelledBipartiteGraph) and isinstance(target, LabelledBipartiteGraph):
        if set(source.alphabet) != set(target.alphabet):
            return []
    found = []
    for left_map in itertools.permutations(range(first.left_size)):
        for right_map in itertools.permutations(range(first.right_size)):
            candidate = BipartiteIso(left_map, right_map)
            if candidate.preserves(source, target, respect_labels=respect_labels):
                found.append(candidate)
    return found


# Homogeneous families


class HomogeneousClass(NamedTuple):
    """Recognised finite homogeneous family, e.g. ``Complete(2,3)`` or ``PerfectMatching(4)``."""

    kind: str
    sizes: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.sizes:
            return self.kind
        return f"{self.kind}({','.join(str(size) for size in self.sizes)})"


def _is_perfect_matching(graph: BipartiteGraph) -> bool:
    if graph.left_size != graph.right_size:
        return False
    return all(graph.degree(vertex) == 1 for vertex in graph.vertices())


def classify_homogeneous(graph: AnyGraph) -> HomogeneousClass:
    """Recognise complete, empty, perfect matching and complemented perfect matching graphs.

    The checks run in that order, so where two families coincide on tiny sizes
    the earlier name wins. Everything else is ``Other``.
    """
    plain = _plain(graph)
    n, m = plain.left_size, plain.right_size
    if plain.edge_count == n * m:
        return HomogeneousClass("Complete", (n, m))
    if plain.edge_count == 0:
        return HomogeneousClass("Empty", (n, m))
    if _is_perfect_matching(plain):
        return HomogeneousClass("PerfectMatching", (n,))
    if _is_perfect_matching(plain.complement()):
        return HomogeneousClass("ComplementPerfectMatching", (n,))
    return HomogeneousClass("Other")


def relabel(graph: LabelledBipartiteGraph, mapping: Mapping[Hashable, Hashable]) -> LabelledBipartiteGraph:
    """Compose the labelling with a bijection of alphabets.

    Raises:
        NotBijectiveError: If ``mapping`` misses a symbol or sends two symbols to one
    """
    missing = [symbol for symbol in graph.alphabet if symbol not in mapping]
    if missing:
        msg = f"Relabelling is not total: no image for {missing[0]!r}"
        raise NotBijectiveError(msg)
    images = tuple(mapping[symbol] for symbol in graph.alphabet)
    if len(set(images)) != len(images):
        msg = "Relabelling is not injective on the alphabet"
        raise NotBijectiveError(msg)
    return LabelledBipartiteGraph(graph.graph, graph.labels, images)
