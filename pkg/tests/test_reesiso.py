"""Tests for Rees matrix isomorphisms as quadruples."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicat.core.bigraph import BipartiteIso
from semicat.core.exceptions import DomainMismatchError, ShapeMismatchError, SizeLimitExceededError
from semicat.core.finsemi import brute_force_isomorphisms
from semicat.core.groups import GroupMap, dihedral_group
from semicat.core.rees import brandt_semigroup, graham_normalize, rees_from_rows
from semicat.core.reesiso import (
    ReesIso,
    apply_iso,
    assemble_from_components,
    component_eta,
    component_psi_system,
    compose_iso,
    decompose_by_components,
    element_map,
    enumerate_isos,
    identity_iso,
    invert_iso,
    isomorphisms_over_identity,
    try_trivialize,
    validate_iso,
)
from semicat.verify.corpus import scrambled_copy


@pytest.fixture
def two_blocks(z2):
    return rees_from_rows(z2, [[None, 0], [0, None]])


def maps_of(isos):
    return [element_map(iso) for iso in isos]


def test_connected_automorphisms(connected_z5):
    """Aut(Z5) times the reflection of the path; gauges collapse to one map each."""
    automorphisms = enumerate_isos(connected_z5, connected_z5)
    assert len(automorphisms) == 8
    assert element_map(automorphisms[0]) == tuple(range(connected_z5.order))
    assert all(validate_iso(connected_z5, connected_z5, iso).valid for iso in automorphisms)


@pytest.mark.parametrize(
    ("name", "expected"),
    [("brandt", 4), ("two_blocks", 4), ("cycle", None), ("dihedral", 6)],
)
def test_structured_search_matches_brute_force(z2, two_blocks, name, expected):
    semigroup = {
        "brandt": brandt_semigroup(z2, 2),
        "two_blocks": two_blocks,
        "cycle": rees_from_rows(z2, [[0, 0], [0, 1]]),
        "dihedral": brandt_semigroup(dihedral_group(3), 1),
    }[name]
    structured = maps_of(enumerate_isos(semigroup, semigroup))
    assert structured == brute_force_isomorphisms(semigroup.as_semigroup, semigroup.as_semigroup)
    if expected is not None:
        assert len(structured) == expected


def test_isomorphisms_between_distinct_matrices(connected_z5):
    normalized, gauge = graham_normalize(connected_z5)
    isos = enumerate_isos(connected_z5, normalized)
    assert len(isos) == 8
    assert element_map(gauge) in maps_of(isos)


def test_shape_mismatch_gives_no_isomorphisms(connected_z5, z5):
    assert enumerate_isos(connected_z5, rees_from_rows(z5, [[0, 0], [0, 0]])) == []


def test_limits(connected_z5):
    assert len(enumerate_isos(connected_z5, connected_z5, limit=1)) == 1
    with pytest.raises(SizeLimitExceededError):
        enumerate_isos(connected_z5, connected_z5, max_isomorphisms=2)


def test_validate_reports_failing_entry(connected_z5, z5):
    bad = ReesIso(
        connected_z5,
        connected_z5,
        GroupMap.identity(z5),
        BipartiteIso((0, 1, 2), (0, 1)),
        (1, 0, 0),
        (0, 0),
    )
    check = validate_iso(connected_z5, connected_z5, bad)
    assert not check.valid
    assert check.witness == (0, 0)


def test_validate_rejects_wrong_shape(connected_z5, z5):
    bad = ReesIso(connected_z5, connected_z5, GroupMap.identity(z5), BipartiteIso((0, 1, 2), (0, 1)), (0, 0), (0, 0))
    with pytest.raises(ShapeMismatchError):
        validate_iso(connected_z5, connected_z5, bad)


def test_validate_rejects_non_graph_map(connected_z5, z5):
    bad = ReesIso(connected_z5, connected_z5, GroupMap.identity(z5), BipartiteIso((1, 0, 2), (0, 1)), (0, 0, 0), (0, 0))
    assert validate_iso(connected_z5, connected_z5, bad).reason.startswith("psi")


def test_apply_iso(connected_z5):
    _, gauge = graham_normalize(connected_z5)
    s = connected_z5
    # (1, 2, 0) -> (1, u_1 + 2 + v_0, 0) with u = (0, 1, 2), v = (1, 2)
    assert apply_iso(gauge, s.encode(1, 2, 0)) == s.encode(1, 4, 0)
    assert gauge(0) == 0


def test_calculus(connected_z5):
    automorphisms = enumerate_isos(connected_z5, connected_z5)
    identity = element_map(identity_iso(connected_z5))
    for first in automorphisms:
        assert element_map(compose_iso(first, invert_iso(first))) == identity
        for second in automorphisms[:3]:
            composed = element_map(compose_iso(first, second))
            assert composed == tuple(element_map(second)[y] for y in element_map(first))


def test_compose_needs_matching_ends(connected_z5):
    normalized, gauge = graham_normalize(connected_z5)
    with pytest.raises(DomainMismatchError):
        compose_iso(gauge, gauge)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_scrambled_copies_are_found(seed):
    source = rees_from_rows(dihedral_group(3), [[0, 1, None], [None, 2, 3]])
    target, iso = scrambled_copy(random.Random(seed), source)
    assert validate_iso(source, target, iso).valid
    found = maps_of(enumerate_isos(source, target))
    assert element_map(iso) in found
    assert element_map(invert_iso(iso)) in maps_of(enumerate_isos(target, source))


def test_trivialize_inner_theta():
    """Every automorphism of D3 is inner, so every map has a quadruple with trivial theta."""
    semigroup = brandt_semigroup(dihedral_group(3), 1)
    automorphisms = enumerate_isos(semigroup, semigroup)
    trivial = [try_trivialize(semigroup, iso) for iso in automorphisms]
    assert all(t is not None and t.theta.images == tuple(range(6)) for t in trivial)
    assert maps_of(trivial) == maps_of(automorphisms)
    assert len(isomorphisms_over_identity(semigroup, semigroup)) == 6


def test_abelian_theta_is_not_inner(connected_z5):
    over_identity = isomorphisms_over_identity(connected_z5, connected_z5)
    assert len(over_identity) == 2
    doubling = next(iso for iso in enumerate_isos(connected_z5, connected_z5) if iso.theta.images[1] == 2)
    assert try_trivialize(connected_z5, doubling) is None


def test_component_split_round_trip(two_blocks):
    permutations = set()
    for iso in enumerate_isos(two_blocks, two_blocks):
        split = decompose_by_components(two_blocks, iso)
        permutations.add(split.permutation)
        rebuilt = assemble_from_components(two_blocks, two_blocks, split.permutation, split.restrictions)
        assert element_map(rebuilt) == element_map(iso)
    assert permutations == {(0, 1), (1, 0)}


def test_assemble_needs_one_restriction_per_component(two_blocks):
    iso = enumerate_isos(two_blocks, two_blocks)[0]
    split = decompose_by_components(two_blocks, iso)
    with pytest.raises(ShapeMismatchError):
        assemble_from_components(two_blocks, two_blocks, split.permutation[:1], split.restrictions[:1])


def test_component_eta(two_blocks, z5):
    assert component_eta(two_blocks) == [(0, 1)]
    mixed = rees_from_rows(z5, [[0, None, None], [None, 0, 0], [None, 0, 1]])
    assert component_eta(mixed) == [(0,), (1,)]


def test_component_psi_system(two_blocks):
    system = component_psi_system(two_blocks)
    assert system.partition == ((0, 1),)
    assert all(0 in part for part in system.family)
    assert len(system.maps[(0, 1)]) == 1
    assert system.maps[(0, 0)] == [{x: x for x in system.family[0]}]
