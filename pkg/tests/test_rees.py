"""Tests for Rees matrix semigroups, their components and normal forms."""

import pytest

from semicat.core.bigraph import LEFT, RIGHT, Vertex
from semicat.core.exceptions import (
    IndexCollisionError,
    NotEnoughElementsError,
    NotRegularError,
    TableShapeError,
    ZeroEntryError,
)
from semicat.core.rees import (
    ComponentBlock,
    Triple,
    brandt_semigroup,
    compose_components,
    counterexample_family,
    decompose_components,
    gamma_tuple,
    graham_normalize,
    induced_graph,
    induced_labelled_graph,
    rees_from_rows,
    rees_idempotents,
    sandwich_matrix,
    spanning_forest,
    structural_predicates,
)
from semicat.core.reesiso import validate_iso
from semicat.utils.tables import find_nonassociative_triple


@pytest.fixture
def two_blocks(z2):
    """Anti-diagonal 2 x 2 matrix: two components swapped against the index order."""
    return rees_from_rows(z2, [[None, 0], [0, None]])


def test_encoding(connected_z5):
    assert connected_z5.order == 31
    assert connected_z5.encode(2, 4, 1) == 30
    assert connected_z5.decode(30) == Triple(2, 4, 1)
    assert connected_z5.decode(0) is None
    assert all(connected_z5.encode(*connected_z5.decode(x)) == x for x in range(1, 31))


def test_sandwich_product(connected_z5):
    s = connected_z5
    # p_{0,1} = 2, so g p h = 1 + 2 + 2 in Z5
    assert s.multiply(s.encode(0, 1, 0), s.encode(1, 2, 1)) == s.encode(0, 0, 1)
    assert s.multiply(s.encode(0, 1, 0), s.encode(2, 0, 0)) == 0
    assert s.multiply(0, s.encode(1, 1, 1)) == 0


def test_product_is_associative(connected_z5):
    assert find_nonassociative_triple(connected_z5.as_semigroup.table) is None


def test_idempotents(connected_z5):
    idempotents = rees_idempotents(connected_z5)
    assert len(idempotents) == 5
    assert connected_z5.encode(0, 4, 0) in idempotents
    assert idempotents == connected_z5.as_semigroup.idempotents


def test_matrix_validation(z5):
    with pytest.raises(NotRegularError) as excinfo:
        rees_from_rows(z5, [[1, None], [2, None]])
    assert (excinfo.value.kind, excinfo.value.index) == ("column", 1)
    with pytest.raises(NotRegularError, match="Row 0"):
        rees_from_rows(z5, [[None, None], [2, 1]])
    with pytest.raises(TableShapeError, match="not an element"):
        rees_from_rows(z5, [[7]])
    with pytest.raises(TableShapeError, match="expected 2"):
        sandwich_matrix([[0, 1], [0]])


def test_induced_graphs(connected_z5):
    graph = induced_graph(connected_z5)
    assert graph.edges() == [(0, 0), (1, 0), (1, 1), (2, 1)]
    labelled = induced_labelled_graph(connected_z5)
    assert labelled.alphabet == (1, 2, 3, 4)
    assert labelled.label(1, 1) == 3


def test_gamma_tuple(connected_z5):
    s = connected_z5
    assert gamma_tuple(s, [s.encode(1, 3, 0), s.encode(2, 0, 1)]) == (
        Vertex(LEFT, 1),
        Vertex(RIGHT, 0),
        Vertex(LEFT, 2),
        Vertex(RIGHT, 1),
    )
    with pytest.raises(ZeroEntryError) as excinfo:
        gamma_tuple(s, [s.encode(1, 3, 0), 0])
    assert excinfo.value.position == 1


def test_decompose_components(two_blocks):
    parts = decompose_components(two_blocks)
    assert [(c.left, c.right) for c in parts.components] == [((0,), (1,)), ((1,), (0,))]
    assert parts.row_order == (1, 0)
    assert parts.col_order == (0, 1)
    assert parts.block_matrix.entries == ((0, None), (None, 0))
    assert parts.component_of(two_blocks.encode(1, 0, 0)) == 1
    assert parts.component_of(0) is None


def test_component_embeddings_are_homomorphisms(two_blocks):
    parts = decompose_components(two_blocks)
    for part, embedding in zip(parts.component_semigroups, parts.embeddings):
        assert len(set(embedding)) == part.order
        for x in range(part.order):
            for y in range(part.order):
                assert embedding[part.multiply(x, y)] == two_blocks.multiply(embedding[x], embedding[y])


def test_compose_components_inverts_decomposition(two_blocks, connected_z5):
    for semigroup in (two_blocks, connected_z5):
        parts = decompose_components(semigroup)
        blocks = [
            ComponentBlock(component.left, component.right, sub.matrix)
            for component, sub in zip(parts.components, parts.component_semigroups)
        ]
        assert compose_components(semigroup.group, blocks) == semigroup


def test_compose_components_rejects_shared_index(z2):
    block = ComponentBlock((0,), (0,), sandwich_matrix([[0]]))
    with pytest.raises(IndexCollisionError) as excinfo:
        compose_components(z2, [block, ComponentBlock((0,), (1,), sandwich_matrix([[1]]))])
    assert excinfo.value.index == 0


def test_spanning_forest(connected_z5, two_blocks):
    forest = spanning_forest(connected_z5)
    assert forest.roots == (0,)
    assert len(forest.edges) == 4
    assert spanning_forest(two_blocks).roots == (0, 1)


def test_normalize_tree_matrix(connected_z5):
    normalized, iso = graham_normalize(connected_z5)
    assert normalized.matrix.entries == ((0, 0, None), (None, 0, 0))
    assert iso.u == (0, 1, 2)
    assert iso.v == (1, 2)
    assert validate_iso(connected_z5, normalized, iso).valid


def test_normalize_keeps_cycle_invariant(z5):
    semigroup = rees_from_rows(z5, [[0, 0], [0, 1]])
    normalized, iso = graham_normalize(semigroup)
    assert normalized.matrix.entries == ((0, 0), (0, 1))
    assert validate_iso(semigroup, normalized, iso).valid


def test_brandt_semigroup(brandt_z2):
    assert brandt_z2.matrix.entries == ((0, None), (None, 0))
    assert brandt_z2.order == 9


def test_counterexample_family(z5):
    semigroup = counterexample_family(z5, 2, 3)
    assert semigroup.matrix.entries == ((1, 0, 0), (0, 2, 0), (0, 0, 0))
    with pytest.raises(NotEnoughElementsError):
        counterexample_family(z5, 5, 6)
    with pytest.raises(NotEnoughElementsError, match="smaller than"):
        counterexample_family(z5, 3, 2)


@pytest.mark.parametrize(
    ("rows", "expected"),
    [
        ([[0, None], [None, 0]], (True, True, True, True, True)),
        ([[1, 2, None], [None, 3, 4]], (False, True, True, False, False)),
        ([[0, 0], [0, 1]], (False, False, False, False, False)),
        ([[0, 0], [0, 0]], (False, True, True, True, True)),
        ([[3, 1], [4, 2]], (False, True, True, True, False)),
    ],
)
def test_structural_predicates(z5, rows, expected):
    """Flags in the order brandt, pure matrix, pure Houghton, orthodox, pure literal."""
    assert tuple(structural_predicates(rees_from_rows(z5, rows))) == expected
