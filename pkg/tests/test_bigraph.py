"""Tests for bipartite graphs and their isomorphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicat.core.bigraph import (
    LEFT,
    RIGHT,
    BipartiteIso,
    Vertex,
    bigraph_automorphisms,
    bigraph_from_edges,
    bigraph_iso,
    bigraph_isomorphisms,
    brute_force_bigraph_isomorphisms,
    classify_homogeneous,
    components,
    labelled_from_edges,
    refine_partition,
    relabel,
    side_pattern,
    tau_classes,
)
from semicat.core.exceptions import NotBijectiveError, ValidationError

PATH_EDGES = [(0, 0), (1, 0), (1, 1), (2, 1)]


@pytest.fixture
def path():
    """L0 - R0 - L1 - R1 - L2."""
    return bigraph_from_edges(3, 2, PATH_EDGES)


@pytest.fixture
def labelled_path():
    return labelled_from_edges(3, 2, [(0, 0, "a"), (1, 0, "b"), (1, 1, "c"), (2, 1, "d")])


def perfect_matching(n):
    return bigraph_from_edges(n, n, [(k, k) for k in range(n)])


def complete(n, m):
    return bigraph_from_edges(n, m, [(l, r) for l in range(n) for r in range(m)])


def test_graph_basics(path):
    assert path.edges() == PATH_EDGES
    assert path.edge_count == 4
    assert path.neighbours(Vertex(RIGHT, 0)) == [Vertex(LEFT, 0), Vertex(LEFT, 1)]
    assert path.degree(Vertex(LEFT, 1)) == 2
    assert not path.adjacent(Vertex(LEFT, 0), Vertex(LEFT, 1))
    assert path.complement().edges() == [(0, 1), (2, 0)]


def test_invalid_graphs():
    with pytest.raises(ValidationError):
        bigraph_from_edges(0, 2, [])
    with pytest.raises(ValidationError, match="outside"):
        bigraph_from_edges(2, 2, [(2, 0)])
    with pytest.raises(ValidationError, match="two labels"):
        labelled_from_edges(1, 1, [(0, 0, "a"), (0, 0, "b")])


@pytest.mark.parametrize(
    ("graph", "expected"),
    [
        (complete(2, 3), 12),
        (perfect_matching(4), 24),
        (bigraph_from_edges(3, 2, PATH_EDGES), 2),
        (bigraph_from_edges(2, 2, []), 4),
    ],
)
def test_automorphism_counts(graph, expected):
    automorphisms = bigraph_automorphisms(graph)
    assert len(automorphisms) == expected
    assert automorphisms[0] == BipartiteIso.identity(graph)
    assert automorphisms == brute_force_bigraph_isomorphisms(graph, graph)


def test_labels_cut_down_automorphisms(labelled_path):
    assert len(bigraph_automorphisms(labelled_path)) == 2
    assert bigraph_automorphisms(labelled_path, respect_labels=True) == [BipartiteIso((0, 1, 2), (0, 1))]


def test_labelled_isomorphism_needs_same_alphabet(labelled_path):
    renamed = relabel(labelled_path, {"a": "w", "b": "x", "c": "y", "d": "z"})
    assert bigraph_iso(labelled_path, renamed) is not None
    assert bigraph_iso(labelled_path, renamed, respect_labels=True) is None


def test_reflected_labelling_is_isomorphic(labelled_path):
    reflected = labelled_from_edges(3, 2, [(2, 1, "a"), (1, 1, "b"), (1, 0, "c"), (0, 0, "d")])
    isos = bigraph_isomorphisms(labelled_path, reflected, respect_labels=True)
    assert isos == [BipartiteIso((2, 1, 0), (1, 0))]
    assert isos[0].preserves(labelled_path, reflected, respect_labels=True)


def test_relabel_must_be_bijective(labelled_path):
    with pytest.raises(NotBijectiveError, match="not total"):
        relabel(labelled_path, {"a": 1})
    with pytest.raises(NotBijectiveError, match="not injective"):
        relabel(labelled_path, {"a": 1, "b": 1, "c": 2, "d": 3})


def test_iso_calculus(path):
    reflection = BipartiteIso((2, 1, 0), (1, 0))
    assert reflection.compose(reflection) == BipartiteIso.identity(path)
    assert reflection.inverse() == reflection
    assert reflection(Vertex(LEFT, 0)) == Vertex(LEFT, 2)


def test_sides_never_swap():
    """A 1x2 star and a 2x1 star are different bipartite graphs."""
    assert bigraph_isomorphisms(complete(1, 2), complete(2, 1)) == []


def test_components():
    graph = bigraph_from_edges(3, 3, [(0, 1), (1, 0), (2, 0)])
    found = components(graph)
    assert [(c.left, c.right) for c in found] == [((0,), (1,)), ((1, 2), (0,)), ((), (2,))]
    assert found[1].graph.edges() == [(0, 0), (1, 0)]


def test_refine_partition(path):
    assert refine_partition(path) == [
        frozenset({Vertex(LEFT, 0), Vertex(LEFT, 2)}),
        frozenset({Vertex(LEFT, 1)}),
        frozenset({Vertex(RIGHT, 0), Vertex(RIGHT, 1)}),
    ]


def test_tau_classes(labelled_path):
    assert tau_classes(complete(2, 3)) == [(0, 1, 2)]
    assert tau_classes(perfect_matching(4)) == [(0,), (1,), (2,), (3,)]
    assert tau_classes(bigraph_from_edges(1, 2, [(0, 0), (0, 1)])) == [(0, 1)]
    assert tau_classes(labelled_from_edges(1, 2, [(0, 0, "a"), (0, 1, "b")])) == [(0,), (1,)]


def test_side_pattern():
    assert side_pattern([Vertex(LEFT, 1), Vertex(RIGHT, 0), Vertex(LEFT, 1)]) == ("L", "R", "L")


@pytest.mark.parametrize(
    ("graph", "name"),
    [
        (complete(2, 3), "Complete(2,3)"),
        (bigraph_from_edges(2, 3, []), "Empty(2,3)"),
        (perfect_matching(4), "PerfectMatching(4)"),
        (perfect_matching(4).complement(), "ComplementPerfectMatching(4)"),
        (bigraph_from_edges(3, 2, PATH_EDGES), "Other"),
    ],
)
def test_classify_homogeneous(graph, name):
    assert str(classify_homogeneous(graph)) == name


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.data(),
)
def test_structured_search_matches_brute_force(left, right, data):
    all_edges = [(l, r) for l in range(left) for r in range(right)]
    edges = data.draw(st.lists(st.sampled_from(all_edges), unique=True))
    graph = bigraph_from_edges(left, right, edges)
    assert bigraph_automorphisms(graph) == brute_force_bigraph_isomorphisms(graph, graph)


def graphs(max_side=3):
    """Random bipartite graphs with up to ``max_side`` vertices per side."""

    @st.composite
    def build(draw):
        left = draw(st.integers(min_value=1, max_value=max_side))
        right = draw(st.integers(min_value=1, max_value=max_side))
        all_edges = [(l, r) for l in range(left) for r in range(right)]
        return bigraph_from_edges(left, right, draw(st.lists(st.sampled_from(all_edges), unique=True)))

    return build()


@settings(max_examples=30, deadline=None)
@given(graphs())
def test_refinement_never_splits_an_orbit(graph):
    cells = refine_partition(graph)
    for automorphism in brute_force_bigraph_isomorphisms(graph, graph):
        for cell in cells:
            assert {automorphism(vertex) for vertex in cell} == cell


@settings(max_examples=30, deadline=None)
@given(graphs(max_side=4))
def test_components_partition_the_vertices(graph):
    found = components(graph)
    lefts = [l for component in found for l in component.left]
    rights = [r for component in found for r in component.right]
    assert sorted(lefts) == list(range(graph.left_size))
    assert sorted(rights) == list(range(graph.right_size))
    for l, r in graph.edges():
        assert sum(l in component.left and r in component.right for component in found) == 1


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=3, max_value=6))
def test_matching_complement_is_recognised(n):
    complement = perfect_matching(n).complement()
    assert str(classify_homogeneous(complement)) == f"ComplementPerfectMatching({n})"
    assert str(classify_homogeneous(complement.complement())) == f"PerfectMatching({n})"
