"""Finite semilattices and strong semilattices of semigroups ``[Y; S_alpha; psi_{alpha,beta}]``.

Components are kept disjoint; the flattened semigroup indexes elements
component-major, component ``alpha`` occupying ``offsets[alpha]`` onwards.
Connecting maps are given for ``alpha > beta`` only; ``psi_{alpha,alpha}`` is the identity.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

from semicat.core.exceptions import (
    ConnectorNotBijectiveError,
    ConnectorNotFunctorialError,
    ConnectorNotHomomorphismError,
    DiagramFailsError,
    NotAssociativeError,
    NotAutomorphismError,
    NotIdempotentError,
    PreconditionFailsError,
    ValidationError,
)
from semicat.core.finsemi import FiniteSemigroup, brute_force_isomorphisms, direct_product
from semicat.utils.disjoint_set import DisjointSet
from semicat.utils.tables import (
    ElementMap,
    Table,
    find_nonassociative_triple,
    is_homomorphism,
    normalize_table,
    refine_colours,
    search_isomorphisms,
)
from semicat.vars.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Semilattice:
    """A finite meet semilattice."""

    order: int
    meet: Table

    @property
    def elements(self) -> range:
        return range(self.order)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @property
    def zero(self) -> Optional[int]:
        """The minimum, if there is one."""
        return next((z for z in self.elements if all(self.meet[z][x] == z for x in self.elements)), None)

    def as_semigroup(self) -> FiniteSemigroup:
        return FiniteSemigroup(order=self.order, table=self.meet, zero=self.zero)


def semilattice_from_table(rows: Iterable[Iterable[int]]) -> Semilattice:
    """Validate a meet table.

    Raises:
        TableShapeError: If the table is malformed
        NotAssociativeError: With the failing triple
        ValidationError: If the meet is not commutative or not idempotent
    """
    table = normalize_table(rows)
    order = len(table)
    for a in range(order):
        if table[a][a] != a:
            msg = f"Meet is not idempotent at {a}"
            raise ValidationError(msg)
        for b in range(a + 1, order):
            if table[a][b] != table[b][a]:
                msg = f"Meet is not commutative at ({a}, {b})"
                raise ValidationError(msg)
    triple = find_nonassociative_triple(table)
    if triple is not None:
        msg = f"Meet is not associative at {triple}"
        raise NotAssociativeError(msg, triple)
    return Semilattice(order, table)


def chain(n: int) -> Semilattice:
    """The chain ``0 < 1 < ... < n-1`` with meet = min."""
    return semilattice_from_table([[min(a, b) for b in range(n)] for a in range(n)])


def semilattice_automorphisms(lattice: Semilattice) -> list[ElementMap]:
    """Meet automorphisms of Y, sorted (identity first)."""
    down_sets = [[sum(1 for x in lattice.elements if lattice.leq(x, a)) for a in lattice.elements]]
    (colours,) = refine_colours([lattice.meet], down_sets)
    return sorted(search_isomorphisms(lattice.meet, lattice.meet, colours, colours))


def is_meet_automorphism(lattice: Semilattice, pi: Sequence[int]) -> bool:
    return sorted(pi) == list(lattice.elements) and is_homomorphism(lattice.meet, lattice.meet, pi)


# Strong semilattices


@dataclass(frozen=True, eq=False)
class StrongSemilattice:
    """A strong semilattice Y of semigroups ``S_alpha`` with connecting maps.

    Attributes:
        lattice: The semilattice Y
        components: ``components[alpha]`` is ``S_alpha``
        connectors: ``connectors[(alpha, beta)]`` for ``alpha > beta`` maps ``S_alpha`` into ``S_beta``
        constants: The chosen idempotents ``e_alpha`` when every connector is constant
    """

    lattice: Semilattice
    components: tuple[FiniteSemigroup, ...]
    connectors: Mapping[tuple[int, int], ElementMap]
    constants: Optional[tuple[int, ...]] = None

    def connector(self, alpha: int, beta: int) -> ElementMap:
        if alpha == beta:
            return tuple(self.components[alpha].elements)
        return self.connectors[(alpha, beta)]

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate([0] + [c.order for c in self.components]))[:-1]

    @property
    def order(self) -> int:
        return sum(component.order for component in self.components)

    def global_index(self, alpha: int, s: int) -> int:
        return self.offsets[alpha] + s

    def locate(self, x: int) -> tuple[int, int]:
        """The ``(alpha, s)`` of a flat element."""
        for alpha in reversed(self.lattice.elements):
            if x >= self.offsets[alpha]:
                return alpha, x - self.offsets[alpha]
        msg = f"Element {x} is outside the strong semilattice"
        raise ValidationError(msg)

    def multiply(self, x: int, y: int) -> int:
        """``a * b = (a psi_{alpha, alpha beta})(b psi_{beta, alpha beta})``."""
        (alpha, a), (beta, b) = self.locate(x), self.locate(y)
        gamma = self.lattice.meet[alpha][beta]
        product = self.components[gamma].table[self.connector(alpha, gamma)[a]][self.connector(beta, gamma)[b]]
        return self.global_index(gamma, product)

    @cached_property
    def flatten(self) -> FiniteSemigroup:
        """The disjoint union with the strong semilattice product."""
        table = tuple(tuple(self.multiply(x, y) for y in range(self.order)) for x in range(self.order))
        zero = next((z for z in range(self.order) if all(table[z][x] == z == table[x][z] for x in range(self.order))), None)
        return FiniteSemigroup(order=self.order, table=table, zero=zero)

    def component_elements(self, alpha: int) -> range:
        start = self.offsets[alpha]
        return range(start, start + self.components[alpha].order)


def _strict_pairs(lattice: Semilattice) -> list[tuple[int, int]]:
    return [(a, b) for a in lattice.elements for b in lattice.elements if a != b and lattice.leq(b, a)]


def sss_construct(
    lattice: Semilattice,
    components: Sequence[FiniteSemigroup],
    connectors: Mapping[tuple[int, int], Sequence[int]],
    constants: Optional[Sequence[int]] = None,
) -> StrongSemilattice:
    """Validate and build ``[Y; S_alpha; psi_{alpha,beta}]``.

    Raises:
        ValidationError: If shapes do not match or a connector is missing or misplaced
        ConnectorNotHomomorphismError: Naming the pair whose map is not a homomorphism
        ConnectorNotFunctorialError: Naming ``alpha >= beta >= gamma`` where composition fails
    """
    if len(components) != lattice.order:
        msg = f"Need one component per semilattice element: {len(components)} for {lattice.order}"
        raise ValidationError(msg)
    required = set(_strict_pairs(lattice))
    for key in connectors:
        if key not in required:
            msg = f"Connector {key} does not go down the semilattice"
            raise ValidationError(msg)
    maps: dict[tuple[int, int], ElementMap] = {}
    for alpha, beta in sorted(required):
        if (alpha, beta) not in connectors:
            msg = f"Missing connector ({alpha}, {beta})"
            raise ValidationError(msg)
        images = tuple(connectors[(alpha, beta)])
        source, target = components[alpha], components[beta]
        if len(images) != source.order or not all(0 <= y < target.order for y in images):
            msg = f"Connector ({alpha}, {beta}) does not map S_{alpha} into S_{beta}"
            raise ValidationError(msg)
        if not is_homomorphism(source.table, target.table, images):
            msg = f"Connector ({alpha}, {beta}) is not a homomorphism"
            raise ConnectorNotHomomorphismError(msg, alpha, beta)
        maps[(alpha, beta)] = images

    semilattice = StrongSemilattice(lattice, tuple(components), maps, None if constants is None else tuple(constants))
    for alpha, beta, gamma in itertools.product(lattice.elements, repeat=3):
        if lattice.leq(beta, alpha) and lattice.leq(gamma, beta):
            first, second = semilattice.connector(alpha, beta), semilattice.connector(beta, gamma)
            if tuple(second[y] for y in first) != semilattice.connector(alpha, gamma):
                msg = f"psi_({alpha},{beta}) psi_({beta},{gamma}) != psi_({alpha},{gamma})"
                raise ConnectorNotFunctorialError(msg, alpha, beta, gamma)
    logger.debug("Strong semilattice over %d elements, flat order %d", lattice.order, semilattice.order)
    return semilattice


def constant_sss(
    lattice: Semilattice,
    components: Sequence[FiniteSemigroup],
    idempotents: Sequence[int],
) -> StrongSemilattice:
    """The strong semilattice whose connector ``alpha > beta`` is constant with image ``e_beta``.

    Raises:
        NotIdempotentError: If some ``e_alpha`` is not idempotent in ``S_alpha``
    """
    for alpha, e in enumerate(idempotents):
        if not components[alpha].is_idempotent(e):
            msg = f"Element {e} of component {alpha} is not idempotent"
            raise NotIdempotentError(msg, alpha, e)
    connectors = {
        (alpha, beta): (idempotents[beta],) * components[alpha].order for alpha, beta in _strict_pairs(lattice)
    }
    return sss_construct(lattice, components, connectors, constants=idempotents)


# Relations on Y


def _classes(size: int, related: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    classes = DisjointSet(size)
    for a, b in related:
        classes.union(a, b)
    return classes.classes()


def eta_relation(
    semilattice: StrongSemilattice,
    max_order: int = DEFAULT_LIMITS["max_order"],
) -> list[tuple[int, ...]]:
    """Classes of ``alpha eta beta`` iff ``S_alpha`` and ``S_beta`` are isomorphic."""
    parts = semilattice.components
    pairs = [
        (a, b)
        for a, b in itertools.combinations(range(len(parts)), 2)
        if brute_force_isomorphisms(parts[a], parts[b], max_order=max_order, limit=1)
    ]
    return _classes(len(parts), pairs)


def upsilon_relation(
    semilattice: StrongSemilattice,
    idempotents: Optional[Sequence[int]] = None,
    max_order: int = DEFAULT_LIMITS["max_order"],
) -> list[tuple[int, ...]]:
    """Classes of ``alpha upsilon beta`` iff some isomorphism ``S_alpha -> S_beta`` sends ``e_alpha`` to ``e_beta``.

    Raises:
        PreconditionFailsError: If no idempotents are given and the semilattice is not constant
    """
    chosen = idempotents if idempotents is not None else semilattice.constants
    if chosen is None:
        msg = "upsilon needs a chosen idempotent in every component"
        raise PreconditionFailsError(msg)
    parts = semilattice.components
    pairs = [
        (a, b)
        for a, b in itertools.combinations(range(len(parts)), 2)
        if any(phi[chosen[a]] == chosen[b] for phi in brute_force_isomorphisms(parts[a], parts[b], max_order=max_order))
    ]
    return _classes(len(parts), pairs)


def connectors_injective(semilattice: StrongSemilattice) -> bool:
    return all(len(set(images)) == len(images) for images in semilattice.connectors.values())


def _zero_images(semilattice: StrongSemilattice) -> list[frozenset[int]]:
    zero = semilattice.lattice.zero
    if zero is None:
        msg = "The semilattice has no zero"
        raise PreconditionFailsError(msg)
    if not connectors_injective(semilattice):
        msg = "Connecting maps are not all injective"
        raise PreconditionFailsError(msg)
    return [frozenset(semilattice.connector(alpha, zero)) for alpha in semilattice.lattice.elements]


def xi_relation(semilattice: StrongSemilattice) -> list[tuple[int, ...]]:
    """Classes of ``alpha xi beta`` iff ``S_alpha psi_{alpha,0} = S_beta psi_{beta,0}``.

    Raises:
        PreconditionFailsError: If Y has no zero or some connector is not injective
    """
    images = _zero_images(semilattice)
    pairs = [(a, b) for a, b in itertools.combinations(range(len(images)), 2) if images[a] == images[b]]
    return _classes(len(images), pairs)


# Automorphisms


@dataclass(frozen=True)
class SssAutomorphism:
    """``[theta_alpha, pi]``: a meet automorphism pi with isomorphisms ``theta_alpha: S_alpha -> S_{alpha pi}``."""

    pi: ElementMap
    maps: tuple[ElementMap, ...]


def sss_build_automorphism(
    semilattice: StrongSemilattice,
    pi: Sequence[int],
    maps: Sequence[Sequence[int]],
) -> SssAutomorphism:
    """Accept ``(pi, theta_alpha)`` when every square ``[alpha, beta; alpha pi, beta pi]`` commutes.

    The square for ``alpha >= beta`` asks ``psi_{alpha,beta} theta_beta = theta_alpha psi_{alpha pi, beta pi}``.

    Raises:
        NotAutomorphismError: If pi is not a meet automorphism or some theta_alpha is not an isomorphism
        DiagramFailsError: With the first ``(alpha, beta, s)`` where a square fails
    """
    lattice, parts = semilattice.lattice, semilattice.components
    pi = tuple(pi)
    thetas = tuple(tuple(theta) for theta in maps)
    if len(pi) != lattice.order or not is_meet_automorphism(lattice, pi):
        msg = "pi is not an automorphism of the semilattice"
        raise NotAutomorphismError(msg)
    if len(thetas) != lattice.order:
        msg = f"Need one map per component, got {len(thetas)}"
        raise NotAutomorphismError(msg)
    for alpha, theta in enumerate(thetas):
        source, target = parts[alpha], parts[pi[alpha]]
        if (
            len(theta) != source.order
            or source.order != target.order
            or sorted(theta) != list(target.elements)
            or not is_homomorphism(source.table, target.table, theta)
        ):
            msg = f"theta_{alpha} is not an isomorphism onto S_{pi[alpha]}"
            raise NotAutomorphismError(msg)

    for alpha, beta in [(a, a) for a in lattice.elements] + _strict_pairs(lattice):
        down = semilattice.connector(alpha, beta)
        down_image = semilattice.connector(pi[alpha], pi[beta])
        for s in parts[alpha].elements:
            if thetas[beta][down[s]] != down_image[thetas[alpha][s]]:
                msg = f"Square [{alpha},{beta}; {pi[alpha]},{pi[beta]}] fails at element {s}"
                raise DiagramFailsError(msg, alpha, beta, s)
    return SssAutomorphism(pi, thetas)


def sss_flat_automorphism(semilattice: StrongSemilattice, automorphism: SssAutomorphism) -> ElementMap:
    """The induced map on the flattened semigroup."""
    images = []
    for x in range(semilattice.order):
        alpha, s = semilattice.locate(x)
        images.append(semilattice.global_index(automorphism.pi[alpha], automorphism.maps[alpha][s]))
    return tuple(images)


def sss_automorphisms(
    semilattice: StrongSemilattice,
    max_order: int = DEFAULT_LIMITS["max_order"],
) -> list[SssAutomorphism]:
    """Every automorphism of the form ``[theta_alpha, pi]``, sorted by flat map.

    For each meet automorphism pi, the component isomorphisms
    ``S_alpha -> S_{alpha pi}`` are combined and kept when every square commutes.

    Raises:
        SizeLimitExceededError: If a component is above ``max_order``
    """
    parts = semilattice.components
    found: dict[ElementMap, SssAutomorphism] = {}
    for pi in semilattice_automorphisms(semilattice.lattice):
        options = [brute_force_isomorphisms(parts[alpha], parts[pi[alpha]], max_order=max_order) for alpha in range(len(parts))]
        for thetas in itertools.product(*options):
            try:
                automorphism = sss_build_automorphism(semilattice, pi, thetas)
            except DiagramFailsError:
                continue
            found[sss_flat_automorphism(semilattice, automorphism)] = automorphism
    logger.debug("Found %d component-wise automorphisms", len(found))
    return [found[key] for key in sorted(found)]


def decompose_flat_automorphism(semilattice: StrongSemilattice, phi: Sequence[int]) -> Optional[SssAutomorphism]:
    """Read ``[theta_alpha, pi]`` off a flat automorphism, or None if it does not permute the components."""
    component_of = {}
    for alpha in semilattice.lattice.elements:
        for x in semilattice.component_elements(alpha):
            component_of[x] = alpha
    pi = []
    thetas = []
    for alpha in semilattice.lattice.elements:
        images = [phi[x] for x in semilattice.component_elements(alpha)]
        targets = {component_of[y] for y in images}
        if len(targets) != 1:
            return None
        (beta,) = targets
        if semilattice.components[beta].order != len(images):
            return None
        pi.append(beta)
        thetas.append(tuple(y - semilattice.offsets[beta] for y in images))
    if not is_meet_automorphism(semilattice.lattice, pi):
        return None
    return SssAutomorphism(tuple(pi), tuple(thetas))


class PurityReport(NamedTuple):
    """``witnesses`` lists flat automorphisms that do not decompose."""

    pure: bool
    automorphisms: int
    witnesses: tuple[ElementMap, ...]


def is_automorphism_pure(
    semilattice: StrongSemilattice,
    max_order: int = DEFAULT_LIMITS["max_order"],
) -> PurityReport:
    """Check that every automorphism of the flattened semigroup has the form ``[theta_alpha, pi]``.

    Raises:
        SizeLimitExceededError: If the flattened semigroup is above ``max_order``
    """
    flat = semilattice.flatten
    automorphisms = brute_force_isomorphisms(flat, flat, max_order=max_order)
    witnesses = tuple(phi for phi in automorphisms if decompose_flat_automorphism(semilattice, phi) is None)
    return PurityReport(not witnesses, len(automorphisms), witnesses)


def lift_from_zero(
    semilattice: StrongSemilattice,
    theta_zero: Sequence[int],
    pi: Sequence[int],
) -> SssAutomorphism:
    """Extend an automorphism of ``S_0`` to the whole strong semilattice.

    With injective connectors into the zero component,
    ``theta_alpha = psi_{alpha,0} theta_0 psi_{alpha pi,0}^-1`` on the image
    ``S_alpha psi_{alpha,0}``.

    Raises:
        PreconditionFailsError: If Y has no zero, a connector is not injective,
            pi moves an image set, or theta_0 does not fix one setwise
    """
    images = _zero_images(semilattice)
    zero = semilattice.lattice.zero
    pi = tuple(pi)
    theta_zero = tuple(theta_zero)
    base = semilattice.components[zero]
    if sorted(theta_zero) != list(base.elements) or not is_homomorphism(base.table, base.table, theta_zero):
        msg = "theta_0 is not an automorphism of the zero component"
        raise PreconditionFailsError(msg)
    if not is_meet_automorphism(semilattice.lattice, pi):
        msg = "pi is not an automorphism of the semilattice"
        raise PreconditionFailsError(msg)
    for alpha in semilattice.lattice.elements:
        if images[pi[alpha]] != images[alpha]:
            msg = f"pi moves component {alpha} to {pi[alpha]}, whose image in S_0 differs"
            raise PreconditionFailsError(msg)
        if frozenset(theta_zero[x] for x in images[alpha]) != images[alpha]:
            msg = f"theta_0 does not fix the image of component {alpha} setwise"
            raise PreconditionFailsError(msg)

    maps = []
    for alpha in semilattice.lattice.elements:
        down = semilattice.connector(alpha, zero)
        back = {y: s for s, y in enumerate(semilattice.connector(pi[alpha], zero))}
        maps.append(tuple(back[theta_zero[down[s]]] for s in semilattice.components[alpha].elements))
    return sss_build_automorphism(semilattice, pi, maps)


class ProductIsomorphism(NamedTuple):
    """An isomorphism from the flattened semigroup onto ``S_base x Y``; the pair ``(s, y)`` has index ``s * |Y| + y``."""

    base: int
    product: FiniteSemigroup
    images: ElementMap


def iso_to_product(semilattice: StrongSemilattice, base: Optional[int] = None) -> ProductIsomorphism:
    """Send ``s`` in ``S_beta`` to ``(s psi_{beta, alpha beta} psi_{alpha, alpha beta}^-1, beta)``.

    Args:
        semilattice: A strong semilattice whose connectors are all bijective
        base: The component alpha used as first factor; defaults to the zero of Y, else 0

    Raises:
        ConnectorNotBijectiveError: If some connector is not a bijection
    """
    for (alpha, beta), images in semilattice.connectors.items():
        if sorted(images) != list(semilattice.components[beta].elements):
            msg = f"Connector ({alpha}, {beta}) is not bijective"
            raise ConnectorNotBijectiveError(msg)
    lattice = semilattice.lattice
    if base is None:
        base = lattice.zero if lattice.zero is not None else 0
    product = direct_product(semilattice.components[base], lattice.as_semigroup())

    images = []
    for x in range(semilattice.order):
        beta, s = semilattice.locate(x)
        gamma = lattice.meet[base][beta]
        back = {y: t for t, y in enumerate(semilattice.connector(base, gamma))}
        images.append(back[semilattice.connector(beta, gamma)[s]] * lattice.order + beta)
    return ProductIsomorphism(base, product, tuple(images))
