"""Tests for semilattices and strong semilattices of semigroups."""

import pytest

from semicat.core.exceptions import (
    ConnectorNotBijectiveError,
    ConnectorNotFunctorialError,
    ConnectorNotHomomorphismError,
    DiagramFailsError,
    NotAutomorphismError,
    NotIdempotentError,
    PreconditionFailsError,
    ValidationError,
)
from semicat.core.finsemi import left_zero, semigroup_from_group
from semicat.core.groups import cyclic_group
from semicat.core.semilat import (
    chain,
    constant_sss,
    decompose_flat_automorphism,
    eta_relation,
    is_automorphism_pure,
    iso_to_product,
    lift_from_zero,
    semilattice_automorphisms,
    semilattice_from_table,
    sss_automorphisms,
    sss_build_automorphism,
    sss_construct,
    sss_flat_automorphism,
    upsilon_relation,
    xi_relation,
)
from semicat.utils.tables import is_homomorphism
from semicat.verify.corpus import v_semilattice

Z1 = semigroup_from_group(cyclic_group(1))
Z2 = semigroup_from_group(cyclic_group(2))


@pytest.fixture
def clifford():
    """Two copies of Z2 over the 2-chain, joined by the identity."""
    return sss_construct(chain(2), [Z2, Z2], {(1, 0): (0, 1)})


@pytest.fixture
def vee_over_z2():
    """Trivial groups on both atoms of the V, mapped into Z2 at the bottom."""
    return sss_construct(v_semilattice(), [Z2, Z1, Z1], {(1, 0): (0,), (2, 0): (0,)})


@pytest.fixture
def impure():
    """The 2-chain semilattice below a trivial group, which maps onto its bottom."""
    return sss_construct(chain(2), [chain(2).as_semigroup(), Z1], {(1, 0): (0,)})


@pytest.fixture
def stacked_left_zero():
    """LZ2 over LZ2, the top collapsing onto element 0."""
    return sss_construct(chain(2), [left_zero(2), left_zero(2)], {(1, 0): (0, 0)})


def test_semilattice_validation():
    with pytest.raises(ValidationError, match="idempotent"):
        semilattice_from_table([[1, 0], [0, 1]])
    with pytest.raises(ValidationError, match="commutative"):
        semilattice_from_table([[0, 0], [1, 1]])


def test_semilattice_basics():
    vee = v_semilattice()
    assert vee.zero == 0
    assert vee.leq(0, 2)
    assert not vee.leq(1, 2)
    assert semilattice_automorphisms(chain(3)) == [(0, 1, 2)]
    assert semilattice_automorphisms(vee) == [(0, 1, 2), (0, 2, 1)]


def test_flattened_product(clifford):
    flat = clifford.flatten
    assert flat.order == 4
    assert clifford.locate(3) == (1, 1)
    # (1 in S_1) * (1 in S_0) = 1 + 1 in S_0
    assert clifford.multiply(3, 1) == 0
    assert flat.zero is None


def test_construct_rejects_bad_connectors():
    with pytest.raises(ConnectorNotHomomorphismError) as excinfo:
        sss_construct(chain(2), [Z2, Z2], {(1, 0): (1, 0)})
    assert (excinfo.value.alpha, excinfo.value.beta) == (1, 0)
    with pytest.raises(ValidationError, match="Missing connector"):
        sss_construct(chain(2), [Z2, Z2], {})
    with pytest.raises(ValidationError, match="does not go down"):
        sss_construct(chain(2), [Z2, Z2], {(1, 0): (0, 1), (0, 1): (0, 1)})
    with pytest.raises(ValidationError, match="one component per"):
        sss_construct(chain(2), [Z2], {})


def test_construct_rejects_non_functorial_connectors():
    with pytest.raises(ConnectorNotFunctorialError) as excinfo:
        sss_construct(chain(3), [Z2, Z2, Z2], {(2, 1): (0, 1), (1, 0): (0, 1), (2, 0): (0, 0)})
    assert (excinfo.value.alpha, excinfo.value.beta, excinfo.value.gamma) == (2, 1, 0)


def test_constant_sss_needs_idempotents():
    with pytest.raises(NotIdempotentError) as excinfo:
        constant_sss(chain(2), [Z2, Z2], [0, 1])
    assert (excinfo.value.alpha, excinfo.value.element) == (1, 1)


def test_eta_and_upsilon_differ():
    """The two 2-chains are isomorphic, but not by a map matching the chosen idempotents."""
    two = chain(2).as_semigroup()
    semilattice = constant_sss(v_semilattice(), [chain(1).as_semigroup(), two, two], [0, 0, 1])
    assert eta_relation(semilattice) == [(0,), (1, 2)]
    assert upsilon_relation(semilattice) == [(0,), (1,), (2,)]
    assert upsilon_relation(semilattice, idempotents=[0, 1, 1]) == [(0,), (1, 2)]


def test_upsilon_needs_idempotents(clifford):
    with pytest.raises(PreconditionFailsError):
        upsilon_relation(clifford)


def test_xi_relation(clifford, vee_over_z2):
    assert xi_relation(clifford) == [(0, 1)]
    assert xi_relation(vee_over_z2) == [(0,), (1, 2)]
    with pytest.raises(PreconditionFailsError, match="not all injective"):
        xi_relation(constant_sss(chain(2), [Z2, Z2], [0, 0]))


def test_build_automorphism(vee_over_z2):
    swap = sss_build_automorphism(vee_over_z2, (0, 2, 1), [(0, 1), (0,), (0,)])
    assert sss_flat_automorphism(vee_over_z2, swap) == (0, 1, 3, 2)
    with pytest.raises(NotAutomorphismError, match="pi"):
        sss_build_automorphism(vee_over_z2, (1, 0, 2), [(0, 1), (0,), (0,)])
    with pytest.raises(NotAutomorphismError, match="theta_0"):
        sss_build_automorphism(vee_over_z2, (0, 1, 2), [(1, 0), (0,), (0,)])


def test_build_automorphism_reports_failing_square(stacked_left_zero):
    with pytest.raises(DiagramFailsError) as excinfo:
        sss_build_automorphism(stacked_left_zero, (0, 1), [(1, 0), (0, 1)])
    assert (excinfo.value.alpha, excinfo.value.beta, excinfo.value.element) == (1, 0, 0)


def test_automorphisms_and_purity(stacked_left_zero, clifford):
    automorphisms = sss_automorphisms(stacked_left_zero)
    assert [a.maps for a in automorphisms] == [((0, 1), (0, 1)), ((0, 1), (1, 0))]
    assert is_automorphism_pure(stacked_left_zero) == (True, 2, ())
    assert len(sss_automorphisms(clifford)) == 1
    assert is_automorphism_pure(clifford).pure


def test_decompose_flat_automorphism(vee_over_z2, clifford):
    decomposed = decompose_flat_automorphism(vee_over_z2, (0, 1, 3, 2))
    assert decomposed.pi == (0, 2, 1)
    assert decomposed.maps == ((0, 1), (0,), (0,))
    assert decompose_flat_automorphism(clifford, (0, 2, 1, 3)) is None


def test_impure_automorphism_does_not_decompose(impure):
    assert impure.flatten.table == ((0, 0, 0), (0, 1, 0), (0, 0, 2))
    assert is_automorphism_pure(impure) == (False, 2, ((0, 2, 1),))
    assert decompose_flat_automorphism(impure, (0, 2, 1)) is None
    assert decompose_flat_automorphism(impure, (0, 1, 2)).pi == (0, 1)
    # only the identity is component-wise
    assert [sss_flat_automorphism(impure, a) for a in sss_automorphisms(impure)] == [(0, 1, 2)]


def test_lift_from_zero(vee_over_z2):
    lifted = lift_from_zero(vee_over_z2, (0, 1), (0, 2, 1))
    assert lifted.pi == (0, 2, 1)
    assert lifted.maps == ((0, 1), (0,), (0,))


def test_lift_from_zero_preconditions():
    uneven = sss_construct(v_semilattice(), [Z2, Z2, Z1], {(1, 0): (0, 1), (2, 0): (0,)})
    with pytest.raises(PreconditionFailsError, match="pi moves"):
        lift_from_zero(uneven, (0, 1), (0, 2, 1))
    moved = sss_construct(chain(2), [left_zero(2), left_zero(1)], {(1, 0): (0,)})
    with pytest.raises(PreconditionFailsError, match="setwise"):
        lift_from_zero(moved, (1, 0), (0, 1))
    with pytest.raises(PreconditionFailsError, match="not an automorphism of the zero"):
        lift_from_zero(moved, (0, 0), (0, 1))


@pytest.mark.parametrize("base", [None, 0, 1])
def test_iso_to_product(clifford, base):
    result = iso_to_product(clifford, base)
    assert result.base == (0 if base is None else base)
    assert result.product.order == 4
    assert sorted(result.images) == [0, 1, 2, 3]
    assert is_homomorphism(clifford.flatten.table, result.product.table, result.images)


def test_iso_to_product_images(clifford):
    assert iso_to_product(clifford).images == (0, 2, 1, 3)


def test_iso_to_product_needs_bijective_connectors():
    with pytest.raises(ConnectorNotBijectiveError):
        iso_to_product(constant_sss(chain(2), [Z2, Z2], [0, 0]))
