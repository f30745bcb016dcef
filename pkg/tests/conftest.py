"""Test configuration for pytest."""

from pathlib import Path

import pytest

from semicat.core.groups import FiniteGroup, cyclic_group, group_direct_product
from semicat.core.rees import ReesMatrixSemigroup, brandt_semigroup, rees_from_rows

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture()
def samples_dir() -> Path:
    """Directory of the bundled structure files."""
    return SAMPLES_DIR


@pytest.fixture()
def z2() -> FiniteGroup:
    return cyclic_group(2)


@pytest.fixture()
def z5() -> FiniteGroup:
    return cyclic_group(5)


@pytest.fixture()
def klein(z2) -> FiniteGroup:
    """Z2 x Z2."""
    return group_direct_product(z2, z2)


@pytest.fixture()
def brandt_z2(z2) -> ReesMatrixSemigroup:
    """B0[Z2; 2]."""
    return brandt_semigroup(z2, 2)


@pytest.fixture()
def connected_z5(z5) -> ReesMatrixSemigroup:
    """I = {0, 1, 2}, Lambda = {0, 1}, one connected component, entries 1, 2, 3, 4."""
    return rees_from_rows(z5, [[1, 2, None], [None, 3, 4]])
