"""Tests for the table, pattern and union-find helpers."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicat.core.exceptions import TableShapeError
from semicat.utils import (
    DisjointSet,
    closure,
    compose_maps,
    equality_pattern,
    generating_set,
    invert_map,
    is_homomorphism,
    natural_equivalent,
    normalize_table,
)

Z5 = tuple(tuple((x + y) % 5 for y in range(5)) for x in range(5))


@pytest.mark.parametrize(
    ("rows", "message"),
    [
        ([], "empty"),
        ([[0, 0], [0]], "Row 1 has 1 entries"),
        ([[0, 2], [1, 0]], r"Entry \(0, 1\) = 2"),
    ],
)
def test_normalize_table_rejects(rows, message):
    with pytest.raises(TableShapeError, match=message):
        normalize_table(rows)


def test_closure_and_generators():
    assert closure(Z5, [0]) == frozenset({0})
    assert closure(Z5, [2]) == frozenset(range(5))
    assert generating_set(Z5) == [0, 1]


def test_maps():
    doubling = tuple(2 * x % 5 for x in range(5))
    assert is_homomorphism(Z5, Z5, doubling)
    assert not is_homomorphism(Z5, Z5, (0, 2, 1, 3, 4))
    assert compose_maps(doubling, doubling) == (0, 4, 3, 2, 1)
    assert compose_maps(doubling, invert_map(doubling)) == tuple(range(5))


def test_disjoint_set():
    classes = DisjointSet(5)
    assert classes.union(3, 1)
    assert classes.union(4, 1)
    assert not classes.union(3, 4)
    assert classes.count == 3
    assert classes.classes() == [(0,), (1, 3, 4), (2,)]


def test_equality_patterns():
    assert equality_pattern("abac") == (0, 1, 0, 2)
    assert natural_equivalent((5, 7, 5), ("x", "y", "x"))
    assert not natural_equivalent((5, 7, 5), (1, 1, 5))
    assert not natural_equivalent((1, 2), (1, 2, 3))


@given(st.lists(st.integers(0, 4), max_size=6), st.permutations(range(5)))
def test_patterns_survive_bijections(values, images):
    assert natural_equivalent(values, [images[x] for x in values])
