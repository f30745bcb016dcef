"""Permutation groups and their orbits on tuples.

Orbit counts on ``M^n`` for ``n = 1..n_max`` are finite evidence of
oligomorphic behaviour only; nothing here decides a property of an infinite
structure.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from semicat.core.exceptions import ConsistencyError, DegreeMismatchError, SemicatError, SizeLimitExceededError
from semicat.core.finsemi import FiniteSemigroup, brute_force_isomorphisms
from semicat.utils.disjoint_set import DisjointSet
from semicat.utils.patterns import equality_pattern
from semicat.utils.tables import ElementMap, compose_maps, invert_map
from semicat.vars.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)

METHODS = ("burnside", "union-find", "both")


@dataclass(frozen=True)
class PermutationGroup:
    """A group of permutations of ``0..degree-1`` acting on the right.

    Attributes:
        degree: Size of the carrier
        generators: Generating permutations
        elements: Every element, sorted (identity first), or None when only generators are known
    """

    degree: int
    generators: tuple[ElementMap, ...]
    elements: Optional[tuple[ElementMap, ...]] = field(default=None, compare=False)

    @property
    def is_complete(self) -> bool:
        return self.elements is not None

    @property
    def order(self) -> int:
        return len(self._full())

    def _full(self) -> tuple[ElementMap, ...]:
        if self.elements is None:
            msg = "Group was built from generators only; call closure() first"
            raise SemicatError(msg)
        return self.elements

    def __iter__(self):  # noqa: ANN204
        return iter(self._full())

    def __contains__(self, perm: object) -> bool:
        return perm in set(self._full())

    def is_closed(self) -> bool:
        """Every product and inverse of listed elements is listed."""
        members = set(self._full())
        return all(compose_maps(a, b) in members for a in members for b in members) and all(
            invert_map(a) in members for a in members
        )


def _check_degree(perms: Sequence[ElementMap], degree: Optional[int]) -> int:
    degrees = {len(perm) for perm in perms}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        msg = f"Permutations of different degrees: {sorted(degrees)}"
        raise DegreeMismatchError(msg)
    if not degrees:
        msg = "Need a degree or at least one generator"
        raise DegreeMismatchError(msg)
    return degrees.pop()


def from_generators(generators: Iterable[Sequence[int]], degree: Optional[int] = None) -> PermutationGroup:
    """A group known only by generators (no closure computed)."""
    perms = [tuple(perm) for perm in generators]
    return PermutationGroup(_check_degree(perms, degree), tuple(perms))


def closure(generators: Iterable[Sequence[int]], degree: Optional[int] = None) -> PermutationGroup:
    """Close a set of permutations under composition.

    Raises:
        DegreeMismatchError: If the permutations have different degrees
    """
    perms = [tuple(perm) for perm in generators]
    size = _check_degree(perms, degree)
    identity = tuple(range(size))
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for element in frontier:
            for generator in perms:
                product = compose_maps(element, generator)
                if product not in elements:
                    elements.add(product)
                    fresh.append(product)
        frontier = fresh
    logger.debug("Closure of %d generators on %d points has order %d", len(perms), size, len(elements))
    return PermutationGroup(size, tuple(perms), tuple(sorted(elements)))


def from_maps(maps: Iterable[Sequence[int]], degree: Optional[int] = None) -> PermutationGroup:
    """Wrap a list of automorphisms; the closure is taken in case the list is not a group."""
    perms = [tuple(perm) for perm in maps]
    group = closure(perms, degree)
    if group.order != len(set(perms)):
        logger.warning("Map list of size %d is not closed; using its closure of order %d", len(set(perms)), group.order)
    return group


def symmetric_group(m: int) -> PermutationGroup:
    """Sym(m) with every element listed."""
    elements = tuple(itertools.permutations(range(m)))
    generators = [] if m < 2 else [tuple([1, 0, *range(2, m)]), tuple([*range(1, m), 0])]
    return PermutationGroup(m, tuple(generators), elements)


# Orbit counting


@dataclass(frozen=True)
class OligomorphyProfile:
    """Orbit counts of a permutation group on n-tuples.

    Attributes:
        counts: ``counts[n - 1]`` is the number of orbits on ``M^n``
        method: How the counts were obtained
    """

    counts: tuple[int, ...]
    method: str

    def count(self, n: int) -> int:
        return self.counts[n - 1]


def burnside_profile(group: PermutationGroup, n_max: int) -> OligomorphyProfile:
    """``(1/|G|) sum fix(g)^n`` for every n; a tuple is fixed iff each of its coordinates is."""
    fixed = Counter(sum(1 for x, y in enumerate(g) if x == y) for g in group)
    counts = []
    for n in range(1, n_max + 1):
        total = Fraction(sum(times * points**n for points, times in fixed.items()), group.order)
        if total.denominator != 1:
            msg = f"Burnside average is not an integer for n={n}: {total}"
            raise ConsistencyError(msg)
        counts.append(int(total))
    return OligomorphyProfile(tuple(counts), "burnside")


def _union_find_count(group: PermutationGroup, n: int) -> int:
    m = group.degree
    classes = DisjointSet(m**n)
    for generator in group.generators:
        for index, entries in enumerate(itertools.product(range(m), repeat=n)):
            image = 0
            for entry in entries:
                image = image * m + generator[entry]
            classes.union(index, image)
    return classes.count


def union_find_profile(
    group: PermutationGroup,
    n_max: int,
    max_tuples: int = DEFAULT_LIMITS["max_tuples"],
) -> OligomorphyProfile:
    """Count orbits by merging every tuple with its generator images.

    Tuples are indexed in mixed radix over the carrier.

    Raises:
        SizeLimitExceededError: If ``degree ** n_max`` exceeds ``max_tuples``
    """
    if group.degree**n_max > max_tuples:
        msg = f"Tuple space {group.degree}^{n_max} exceeds max_tuples={max_tuples}"
        raise SizeLimitExceededError(msg, group.degree**n_max, max_tuples)
    return OligomorphyProfile(tuple(_union_find_count(group, n) for n in range(1, n_max + 1)), "union-find")


def oligomorphy_profile(
    group: PermutationGroup,
    n_max: int = DEFAULT_LIMITS["orbit_length"],
    method: str = "both",
    max_tuples: int = DEFAULT_LIMITS["max_tuples"],
) -> OligomorphyProfile:
    """Orbit counts on ``M^n`` for ``n = 1..n_max``.

    Args:
        group: The acting group
        n_max: Longest tuple length
        method: ``burnside``, ``union-find`` or ``both`` (Burnside, cross-checked by union-find where the tuple space fits)
        max_tuples: Bound on the tuple space scanned by union-find

    Returns:
        The profile

    Raises:
        ConsistencyError: If the two methods disagree
        SizeLimitExceededError: If union-find is the only usable method and the tuple space is too large
    """
    if method not in METHODS:
        msg = f"Unknown orbit counting method {method!r}, expected one of {', '.join(METHODS)}"
        raise SemicatError(msg)
    if not group.is_complete and method != "union-find":
        logger.warning("Only generators are known; skipping Burnside and counting with union-find")
        method = "union-find"
    if method == "union-find":
        return union_find_profile(group, n_max, max_tuples)
    profile = burnside_profile(group, n_max)
    if method == "burnside":
        return profile
    for n in range(1, n_max + 1):
        if group.degree**n > max_tuples:
            logger.warning("Tuple space %d^%d too large for the union-find cross-check", group.degree, n)
            break
        checked = _union_find_count(group, n)
        if checked != profile.count(n):
            msg = f"Burnside gives {profile.count(n)} orbits on {n}-tuples, union-find gives {checked}"
            raise ConsistencyError(msg)
    return OligomorphyProfile(profile.counts, "both")


def same_orbit_witness(group: PermutationGroup, a: Sequence[int], b: Sequence[int]) -> Optional[ElementMap]:
    """The least element sending ``a`` to ``b`` coordinatewise, or None."""
    if len(a) != len(b):
        return None
    return next((g for g in group if all(g[x] == y for x, y in zip(a, b))), None)


def set_extension_stabilizer(group: PermutationGroup, subsets: Iterable[Iterable[int]]) -> PermutationGroup:
    """The subgroup fixing every subset setwise: Aut of the set extension ``(M; A_1, ..., A_r)``."""
    sets = [frozenset(subset) for subset in subsets]
    kept = tuple(g for g in group if all(frozenset(g[x] for x in subset) == subset for subset in sets))
    return PermutationGroup(group.degree, kept, kept)


# Equality patterns


def natural_pattern_classes(m: int, n: int) -> Counter[tuple[int, ...]]:
    """Group every n-tuple over an m-set by its equality pattern (brute force)."""
    return Counter(equality_pattern(entries) for entries in itertools.product(range(m), repeat=n))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def natural_class_count(m: int, n: int) -> int:
    """Number of equality-pattern classes on n-tuples over an m-set."""
    return sum(stirling2(n, k) for k in range(min(n, m) + 1))


# Psi-systems


class PsiSystem(NamedTuple):
    """Data of an ``(M, M'; N; Psi)``-system.

    Attributes:
        semigroup: The ambient structure M
        family: The substructures ``M_i`` as element sets of M
        partition: Blocks ``N_1, ..., N_r`` of the index set
        maps: ``maps[(i, j)]`` lists the isomorphisms ``M_i -> M_j`` as dicts over elements of M
    """

    semigroup: FiniteSemigroup
    family: tuple[frozenset[int], ...]
    partition: tuple[tuple[int, ...], ...]
    maps: Mapping[tuple[int, int], Sequence[Mapping[int, int]]]


class PsiFailure(NamedTuple):
    condition: str
    detail: str


class PsiSystemReport(NamedTuple):
    passed: bool
    failures: tuple[PsiFailure, ...]
    choices_checked: int


def _frozen(mapping: Mapping[int, int]) -> frozenset[tuple[int, int]]:
    return frozenset(mapping.items())


def _block_permutations(size: int, partition: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Permutations of ``0..size-1`` fixing every block setwise."""
    per_block = [list(itertools.permutations(block)) for block in partition]
    found = []
    for choice in itertools.product(*per_block):
        images = list(range(size))
        for block, image in zip(partition, choice):
            for x, y in zip(block, image):
                images[x] = y
        found.append(tuple(images))
    return found


def psi_system_check(
    semigroup: FiniteSemigroup,
    family: Sequence[Iterable[int]],
    partition: Sequence[Sequence[int]],
    maps: Mapping[tuple[int, int], Sequence[Mapping[int, int]]],
    automorphisms: Optional[Sequence[ElementMap]] = None,
    max_order: int = DEFAULT_LIMITS["max_order"],
    max_choices: int = DEFAULT_LIMITS["max_choices"],
) -> PsiSystemReport:
    """Verify the four Psi-system conditions exhaustively.

    ``nonempty``: maps exist inside every block; ``composition`` and ``inverses``: closure under
    composition and inverses; ``extension``: for every block-preserving permutation pi
    of the index set and every choice of ``phi_i`` in ``Psi_{i, i pi}`` some
    automorphism of M extends all the ``phi_i`` at once.

    Args:
        semigroup: The ambient semigroup M
        family: Element sets ``M_i``
        partition: Blocks of the index set
        maps: ``maps[(i, j)]`` the isomorphisms ``M_i -> M_j`` as dicts; absent keys mean none
        automorphisms: Aut(M), computed by brute force when omitted
        max_order: Bound for the brute-force Aut(M)
        max_choices: Bound on the number of (pi, phi) choices examined for the extension condition

    Returns:
        The report with every failure found

    Raises:
        SizeLimitExceededError: If M or the choice space is too large
    """
    indices = range(len(family))
    psi = {(i, j): [dict(phi) for phi in maps.get((i, j), [])] for i in indices for j in indices}
    psi_sets = {key: {_frozen(phi) for phi in value} for key, value in psi.items()}
    failures: list[PsiFailure] = []

    for block in partition:
        for i, j in itertools.product(block, repeat=2):
            if not psi[(i, j)]:
                failures.append(PsiFailure("nonempty", f"no isomorphism from {i} to {j} inside one block"))

    for i, j, l in itertools.product(indices, repeat=3):
        for phi in psi[(i, j)]:
            for phi_next in psi[(j, l)]:
                product = {x: phi_next[y] for x, y in phi.items()}
                if _frozen(product) not in psi_sets[(i, l)]:
                    failures.append(PsiFailure("composition", f"composite {i}->{j}->{l} is missing from Psi_({i},{l})"))
                    break

    for i, j in itertools.product(indices, repeat=2):
        for phi in psi[(i, j)]:
            if _frozen({y: x for x, y in phi.items()}) not in psi_sets[(j, i)]:
                failures.append(PsiFailure("inverses", f"inverse of a map {i}->{j} is missing from Psi_({j},{i})"))

    if automorphisms is None:
        automorphisms = brute_force_isomorphisms(semigroup, semigroup, max_order=max_order)
    covered = sorted(set().union(*(frozenset(member) for member in family))) if family else []
    restrictions = {tuple(phi[x] for x in covered) for phi in automorphisms}

    permutations = _block_permutations(len(family), partition)
    total = sum(_product_size(len(psi[(i, pi[i])]) for i in indices) for pi in permutations)
    if total > max_choices:
        msg = f"The extension condition needs {total} choices, above max_choices={max_choices}"
        raise SizeLimitExceededError(msg, total, max_choices)

    for pi in permutations:
        for choice in itertools.product(*(psi[(i, pi[i])] for i in indices)):
            union: dict[int, int] = {}
            clash = False
            for phi in choice:
                for x, y in phi.items():
                    if union.setdefault(x, y) != y:
                        clash = True
            if clash or tuple(union.get(x, -1) for x in covered) not in restrictions:
                failures.append(PsiFailure("extension", f"no automorphism extends a choice over pi={list(pi)}"))
                break

    logger.debug("Psi-system check: %d failures over %d choices", len(failures), total)
    return PsiSystemReport(not failures, tuple(failures), total)


def _product_size(sizes: Iterable[int]) -> int:
    total = 1
    for size in sizes:
        total *= size
    return total


class PrcReport(NamedTuple):
    """``witness`` is ``(automorphism, i, j)`` when some pivot match fails to carry ``A_i`` onto ``A_j``."""

    holds: bool
    witness: Optional[tuple[ElementMap, int, int]] = None


def pivoted_prc_check(
    semigroup: FiniteSemigroup,
    pairs: Sequence[tuple[Iterable[int], Sequence[int]]],
    automorphisms: Optional[Sequence[ElementMap]] = None,
    max_order: int = DEFAULT_LIMITS["max_order"],
) -> PrcReport:
    """Check that ``{(A_i, X_i)}`` is a system of pivoted pairwise relatively characteristic subsets.

    Every automorphism sending pivot ``X_i`` to ``X_j`` must map ``A_i`` bijectively onto ``A_j``.
    """
    if automorphisms is None:
        automorphisms = brute_force_isomorphisms(semigroup, semigroup, max_order=max_order)
    subsets = [frozenset(subset) for subset, _ in pairs]
    pivots = [tuple(pivot) for _, pivot in pairs]
    by_pivot: dict[Hashable, list[int]] = {}
    for j, pivot in enumerate(pivots):
        by_pivot.setdefault(pivot, []).append(j)
    for phi in automorphisms:
        for i, pivot in enumerate(pivots):
            image = tuple(phi[x] for x in pivot)
            for j in by_pivot.get(image, []):
                if frozenset(phi[x] for x in subsets[i]) != subsets[j]:
                    return PrcReport(False, (tuple(phi), i, j))
    return PrcReport(True)
