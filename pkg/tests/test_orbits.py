"""Tests for permutation groups, orbit counts and Psi-system checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicat.core.exceptions import ConsistencyError, DegreeMismatchError, SemicatError, SizeLimitExceededError
from semicat.core.finsemi import left_zero, semigroup_from_group
from semicat.core.groups import cyclic_group
from semicat.core.orbits import (
    PermutationGroup,
    burnside_profile,
    closure,
    from_generators,
    from_maps,
    natural_class_count,
    natural_pattern_classes,
    oligomorphy_profile,
    pivoted_prc_check,
    psi_system_check,
    same_orbit_witness,
    set_extension_stabilizer,
    stirling2,
    symmetric_group,
    union_find_profile,
)

BELL = (1, 2, 5, 15)


def test_closure_of_a_cycle():
    group = closure([(1, 2, 3, 0)])
    assert group.order == 4
    assert group.elements[0] == (0, 1, 2, 3)
    assert group.is_closed()
    assert (2, 3, 0, 1) in group


def test_degree_checks():
    with pytest.raises(DegreeMismatchError):
        closure([(1, 0), (0, 2, 1)])
    with pytest.raises(DegreeMismatchError):
        closure([])
    assert closure([], degree=3).order == 1


def test_generators_only_group():
    group = from_generators([(1, 0, 2)])
    assert not group.is_complete
    with pytest.raises(SemicatError, match="closure"):
        group.order
    profile = oligomorphy_profile(group, 2)
    assert profile.method == "union-find"
    assert profile.counts == (2, 5)


def test_from_maps_closes_non_groups(caplog):
    group = from_maps([(1, 2, 0)])
    assert group.order == 3
    assert "not closed" in caplog.text


@pytest.mark.parametrize("m", [3, 4, 5])
def test_symmetric_group_has_bell_counts(m):
    assert oligomorphy_profile(symmetric_group(m), 3).counts == BELL[:3]


def test_trivial_group_counts_every_tuple():
    trivial = PermutationGroup(3, (), ((0, 1, 2),))
    assert burnside_profile(trivial, 3).counts == (3, 9, 27)
    assert union_find_profile(trivial, 3).counts == (3, 9, 27)


def test_methods_agree_on_a_cycle():
    group = closure([(1, 2, 3, 0)])
    burnside = oligomorphy_profile(group, 3, method="burnside")
    union_find = oligomorphy_profile(group, 3, method="union-find")
    assert burnside.counts == union_find.counts == (1, 4, 16)
    assert oligomorphy_profile(group, 3).method == "both"


def test_non_group_fails_burnside():
    """A listed set that is not a group breaks the Burnside average."""
    broken = PermutationGroup(3, ((1, 2, 0),), ((0, 1, 2), (1, 2, 0)))
    with pytest.raises(ConsistencyError, match="not an integer"):
        burnside_profile(broken, 1)


def test_orbit_method_validation():
    with pytest.raises(SemicatError, match="Unknown orbit counting method"):
        oligomorphy_profile(symmetric_group(2), 1, method="magic")
    with pytest.raises(SizeLimitExceededError):
        union_find_profile(symmetric_group(4), 3, max_tuples=10)


def test_same_orbit_witness():
    group = symmetric_group(3)
    assert same_orbit_witness(group, (0, 1), (2, 0)) == (2, 0, 1)
    assert same_orbit_witness(group, (0, 0), (0, 1)) is None


def test_set_extension_stabilizer():
    stabilizer = set_extension_stabilizer(symmetric_group(4), [{1, 2}])
    assert stabilizer.order == 4
    assert oligomorphy_profile(stabilizer, 1).counts == (2,)
    assert set_extension_stabilizer(symmetric_group(4), [{1, 2}, {2}]).order == 2


def test_natural_patterns():
    assert [natural_class_count(4, n) for n in range(1, 5)] == list(BELL)
    assert natural_class_count(2, 3) == 4
    assert stirling2(4, 2) == 7
    assert len(natural_pattern_classes(3, 3)) == natural_class_count(3, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=4))
def test_pattern_classes_match_stirling_sums(m, n):
    assert len(natural_pattern_classes(m, n)) == natural_class_count(m, n)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_burnside_equals_union_find(generators):
    group = closure(generators)
    assert burnside_profile(group, 3).counts == union_find_profile(group, 3).counts


@settings(max_examples=15, deadline=None)
@given(
    st.lists(st.permutations(range(5)), min_size=1, max_size=3),
    st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=3),
    st.data(),
)
def test_same_orbit_witness_is_symmetric(generators, a, data):
    group = closure(generators)
    b = data.draw(st.lists(st.integers(min_value=0, max_value=4), min_size=len(a), max_size=len(a)))
    forward = same_orbit_witness(group, a, b)
    backward = same_orbit_witness(group, b, a)
    assert (forward is None) == (backward is None)
    if forward is not None:
        assert [forward[x] for x in a] == b
        assert [backward[y] for y in b] == a


@settings(max_examples=15, deadline=None)
@given(
    st.lists(st.permutations(range(5)), min_size=1, max_size=3),
    st.lists(st.frozensets(st.integers(min_value=0, max_value=4)), max_size=3),
)
def test_set_extension_stabilizer_is_a_subgroup(generators, subsets):
    group = closure(generators)
    stabilizer = set_extension_stabilizer(group, subsets)
    assert stabilizer.is_closed()
    assert tuple(range(5)) in stabilizer
    assert group.order % stabilizer.order == 0


# Psi-systems on the left zero semigroup of order 4, split into two halves


@pytest.fixture
def halves():
    semigroup = left_zero(4)
    family = [{0, 1}, {2, 3}]
    swap = {0: 2, 1: 3}
    maps = {
        (0, 0): [{0: 0, 1: 1}, {0: 1, 1: 0}],
        (1, 1): [{2: 2, 3: 3}, {2: 3, 3: 2}],
        (0, 1): [swap, {0: 3, 1: 2}],
        (1, 0): [{2: 0, 3: 1}, {3: 0, 2: 1}],
    }
    return semigroup, family, maps


def test_psi_system_passes(halves):
    semigroup, family, maps = halves
    report = psi_system_check(semigroup, family, [(0, 1)], maps)
    assert report.passed
    assert report.failures == ()
    assert report.choices_checked == 8


def test_psi_system_reports_missing_inverse(halves):
    semigroup, family, maps = halves
    report = psi_system_check(semigroup, family, [(0, 1)], {**maps, (1, 0): [{2: 0, 3: 1}]})
    assert not report.passed
    assert "inverses" in {failure.condition for failure in report.failures}


def test_psi_system_reports_empty_block(halves):
    semigroup, family, maps = halves
    report = psi_system_check(semigroup, family, [(0, 1)], {(0, 0): maps[(0, 0)], (1, 1): maps[(1, 1)]})
    assert [f.condition for f in report.failures] == ["nonempty", "nonempty"]


def test_psi_system_choice_limit(halves):
    semigroup, family, maps = halves
    with pytest.raises(SizeLimitExceededError):
        psi_system_check(semigroup, family, [(0, 1)], maps, max_choices=3)


def test_pivoted_prc():
    z3 = semigroup_from_group(cyclic_group(3))
    assert pivoted_prc_check(z3, [({0}, (0,)), ({1, 2}, (1,))]).holds
    report = pivoted_prc_check(left_zero(3), [({0, 1}, (0,)), ({2}, (2,))])
    assert not report.holds
    assert report.witness == ((0, 2, 1), 0, 0)
