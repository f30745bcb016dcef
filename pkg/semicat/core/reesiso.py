"""Isomorphisms of Rees matrix semigroups as quadruples ``(theta, psi, u, v)``.

A quadruple from S = M0[G; I, Lambda; P] to T = M0[G'; I', Lambda'; Q] consists of a
group isomorphism ``theta``, an isomorphism ``psi`` of the induced bipartite
graphs and elements ``u_i``, ``v_lam`` of G'. It is an isomorphism iff

    p_{lam,i} theta = v_lam * q_{lam psi, i psi} * u_i

for every nonzero entry, and then acts by

    (i, g, lam) -> (i psi, u_i (g theta) v_lam, lam psi).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional

from semicat.core.bigraph import LEFT, BipartiteIso, Vertex, bigraph_isomorphisms, components
from semicat.core.exceptions import DomainMismatchError, ShapeMismatchError, SizeLimitExceededError
from semicat.core.groups import GroupMap, group_isomorphisms, inner_witness
from semicat.core.orbits import PsiSystem
from semicat.core.rees import (
    ReesComponentDecomposition,
    ReesMatrixSemigroup,
    decompose_components,
    induced_graph,
)
from semicat.utils.disjoint_set import DisjointSet
from semicat.utils.tables import ElementMap
from semicat.vars.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReesIso:
    """An isomorphism ``(theta, psi, (u_i), (v_lam))`` from ``source`` to ``target``."""

    source: ReesMatrixSemigroup
    target: ReesMatrixSemigroup
    theta: GroupMap
    psi: BipartiteIso
    u: tuple[int, ...]
    v: tuple[int, ...]

    @classmethod
    def gauge(
        cls,
        source: ReesMatrixSemigroup,
        target: ReesMatrixSemigroup,
        u: tuple[int, ...],
        v: tuple[int, ...],
    ) -> ReesIso:
        """A quadruple with identity ``theta`` and ``psi`` between two matrices over one group."""
        return cls(source, target, GroupMap.identity(source.group), BipartiteIso.identity(induced_graph(source)), u, v)

    def __call__(self, x: int) -> int:
        return apply_iso(self, x)

    def to_dict(self) -> dict[str, object]:
        """Report form: theta images, psi left/right maps, u and v."""
        return {
            "theta": list(self.theta.images),
            "psi": {"left": list(self.psi.left_map), "right": list(self.psi.right_map)},
            "u": list(self.u),
            "v": list(self.v),
        }


class IsoCheck(NamedTuple):
    """Outcome of ``validate_iso``; ``witness`` is the failing ``(lam, i)`` entry if any."""

    valid: bool
    witness: Optional[tuple[int, int]] = None
    reason: str = ""


def validate_iso(source: ReesMatrixSemigroup, target: ReesMatrixSemigroup, iso: ReesIso) -> IsoCheck:
    """Check the entry condition at every nonzero entry of P.

    Raises:
        ShapeMismatchError: If the quadruple's components do not fit the index sets and groups
    """
    shapes = (
        (len(iso.theta.images), source.group.order),
        (iso.theta.target.order, target.group.order),
        (len(iso.psi.left_map), source.index_size),
        (len(iso.psi.right_map), source.lambda_size),
        (len(iso.u), source.index_size),
        (len(iso.v), source.lambda_size),
        (source.index_size, target.index_size),
        (source.lambda_size, target.lambda_size),
    )
    for actual, expected in shapes:
        if actual != expected:
            msg = f"Quadruple does not fit: size {actual} where {expected} is required"
            raise ShapeMismatchError(msg)

    theta = GroupMap(source.group, target.group, iso.theta.images)
    if not theta.is_bijective or not theta.is_homomorphism():
        return IsoCheck(False, None, "theta is not a group isomorphism")
    if not iso.psi.preserves(induced_graph(source), induced_graph(target)):
        return IsoCheck(False, None, "psi is not an isomorphism of the induced graphs")

    group = target.group
    for lam, i in source.matrix.nonzero():
        image = target.matrix.entry(iso.psi.right_map[lam], iso.psi.left_map[i])
        expected = theta(source.matrix.entry(lam, i))
        if image is None or group.multiply(iso.v[lam], image, iso.u[i]) != expected:
            return IsoCheck(False, (lam, i), f"entry condition fails at ({lam}, {i})")
    return IsoCheck(True)


def apply_iso(iso: ReesIso, x: int) -> int:
    """``(i, g, lam) -> (i psi, u_i (g theta) v_lam, lam psi)`` and ``0 -> 0``."""
    triple = iso.source.decode(x)
    if triple is None:
        return 0
    group = iso.target.group
    return iso.target.encode(
        iso.psi.left_map[triple.i],
        group.multiply(iso.u[triple.i], iso.theta(triple.g), iso.v[triple.lam]),
        iso.psi.right_map[triple.lam],
    )


def element_map(iso: ReesIso) -> ElementMap:
    """The isomorphism as an image tuple over the element encoding."""
    return tuple(apply_iso(iso, x) for x in range(iso.source.order))


def identity_iso(semigroup: ReesMatrixSemigroup) -> ReesIso:
    identity = semigroup.group.identity
    return ReesIso.gauge(
        semigroup,
        semigroup,
        (identity,) * semigroup.index_size,
        (identity,) * semigroup.lambda_size,
    )


def compose_iso(first: ReesIso, second: ReesIso) -> ReesIso:
    """Apply ``first`` then ``second``.

    The result is ``(theta theta', psi psi', (u'_{i psi} (u_i theta'))_i, ((v_lam theta') v'_{lam psi})_lam)``.

    Raises:
        DomainMismatchError: If ``first`` does not land where ``second`` starts
    """
    if first.target != second.source:
        msg = "Cannot compose: the first isomorphism does not land in the domain of the second"
        raise DomainMismatchError(msg)
    group = second.target.group
    return ReesIso(
        source=first.source,
        target=second.target,
        theta=first.theta.compose(second.theta),
        psi=first.psi.compose(second.psi),
        u=tuple(
            group.multiply(second.u[first.psi.left_map[i]], second.theta(first.u[i])) for i in range(len(first.u))
        ),
        v=tuple(
            group.multiply(second.theta(first.v[lam]), second.v[first.psi.right_map[lam]]) for lam in range(len(first.v))
        ),
    )


def invert_iso(iso: ReesIso) -> ReesIso:
    """``(theta^-1, psi^-1, ((u_{i psi^-1})^-1 theta^-1)_i, ((v_{lam psi^-1})^-1 theta^-1)_lam)``."""
    theta_inverse = iso.theta.inverse()
    psi_inverse = iso.psi.inverse()
    group = iso.target.group
    return ReesIso(
        source=iso.target,
        target=iso.source,
        theta=theta_inverse,
        psi=psi_inverse,
        u=tuple(theta_inverse(group.inverse(iso.u[i])) for i in psi_inverse.left_map),
        v=tuple(theta_inverse(group.inverse(iso.v[lam])) for lam in psi_inverse.right_map),
    )


# Enumeration


class _ComponentTree(NamedTuple):
    root: int
    edges: tuple[tuple[Vertex, Vertex], ...]
    entries: tuple[tuple[int, int], ...]


def _component_trees(semigroup: ReesMatrixSemigroup) -> list[_ComponentTree]:
    """One breadth-first tree per component of Gamma(P), with the component's nonzero entries."""
    graph = induced_graph(semigroup)
    trees = []
    for part in components(graph):
        root = Vertex(LEFT, part.left[0])
        seen, frontier, edges = {root}, [root], []
        while frontier:
            fresh = []
            for vertex in frontier:
                for neighbour in graph.neighbours(vertex):
                    if neighbour not in seen:
                        seen.add(neighbour)
                        edges.append((vertex, neighbour))
                        fresh.append(neighbour)
            frontier = fresh
        entries = tuple((lam, i) for i in part.left for lam in part.right if semigroup.matrix.entry(lam, i) is not None)
        trees.append(_ComponentTree(part.left[0], tuple(edges), entries))
    return trees


def _component_gauges(
    source: ReesMatrixSemigroup,
    target: ReesMatrixSemigroup,
    theta: GroupMap,
    psi: BipartiteIso,
    tree: _ComponentTree,
) -> list[tuple[dict[int, int], dict[int, int]]]:
    """All ``(u, v)`` on one component solving the entry condition for fixed theta and psi.

    ``u`` at the root ranges over G'; the tree then determines every other
    value, and the non-tree entries are checked for consistency.
    """
    group = target.group
    p, q = source.matrix, target.matrix

    def q_entry(lam: int, i: int) -> Optional[int]:
        return q.entry(psi.right_map[lam], psi.left_map[i])

    solutions = []
    for gauge in group.elements:
        u, v = {tree.root: gauge}, {}
        for parent, child in tree.edges:
            if parent.side == LEFT:
                i, lam = parent.index, child.index
                # v_lam = (p theta) u_i^-1 q^-1
                v[lam] = group.multiply(theta(p.entry(lam, i)), group.inverse(u[i]), group.inverse(q_entry(lam, i)))
            else:
                lam, i = parent.index, child.index
                # u_i = q^-1 v_lam^-1 (p theta)
                u[i] = group.multiply(group.inverse(q_entry(lam, i)), group.inverse(v[lam]), theta(p.entry(lam, i)))
        if all(group.multiply(v[lam], q_entry(lam, i), u[i]) == theta(p.entry(lam, i)) for lam, i in tree.entries):
            solutions.append((u, v))
    return solutions


def enumerate_isos(
    source: ReesMatrixSemigroup,
    target: ReesMatrixSemigroup,
    max_isomorphisms: int = DEFAULT_LIMITS["max_isomorphisms"],
    limit: Optional[int] = None,
) -> list[ReesIso]:
    """All isomorphisms from ``source`` to ``target``, one quadruple per element map.

    For every group isomorphism theta and every isomorphism psi of the plain
    induced graphs, ``u`` is fixed at the least I-vertex of each component and
    propagated along a spanning tree; the surviving per-component gauges are
    combined across components. Distinct quadruples with the same element map
    are deduplicated.

    Args:
        source: Domain semigroup
        target: Codomain semigroup
        max_isomorphisms: Largest number of distinct maps to collect
        limit: Stop after this many distinct maps (``limit=1`` answers existence)

    Returns:
        Quadruples sorted by element map (the identity map first for automorphisms)

    Raises:
        SizeLimitExceededError: If more than ``max_isomorphisms`` maps exist
    """
    if (source.index_size, source.lambda_size, source.group.order) != (
        target.index_size,
        target.lambda_size,
        target.group.order,
    ):
        return []
    thetas = group_isomorphisms(source.group, target.group)
    psis = bigraph_isomorphisms(induced_graph(source), induced_graph(target))
    if not thetas or not psis:
        return []
    trees = _component_trees(source)
    logger.debug("Candidates: %d group isomorphisms, %d graph isomorphisms", len(thetas), len(psis))

    found: dict[ElementMap, ReesIso] = {}
    for theta, psi in itertools.product(thetas, psis):
        per_component = [_component_gauges(source, target, theta, psi, tree) for tree in trees]
        for choice in itertools.product(*per_component):
            u: dict[int, int] = {}
            v: dict[int, int] = {}
            for part_u, part_v in choice:
                u.update(part_u)
                v.update(part_v)
            iso = ReesIso(
                source,
                target,
                theta,
                psi,
                tuple(u[i] for i in range(source.index_size)),
                tuple(v[lam] for lam in range(source.lambda_size)),
            )
            found.setdefault(element_map(iso), iso)
            if limit is not None and len(found) >= limit:
                return [found[key] for key in sorted(found)]
            if len(found) > max_isomorphisms:
                msg = f"More than {max_isomorphisms} isomorphisms; raise max_isomorphisms to enumerate them all"
                raise SizeLimitExceededError(msg, len(found), max_isomorphisms)
    logger.debug("Enumerated %d distinct isomorphisms", len(found))
    return [found[key] for key in sorted(found)]


# Trivial induced group automorphism


def try_trivialize(semigroup: ReesMatrixSemigroup, iso: ReesIso) -> Optional[ReesIso]:
    """Rewrite ``iso`` with ``theta = 1_G`` when the same element map allows it.

    This is possible exactly when theta is inner, ``g theta = c g c^-1``; then
    ``u_i (g theta) v_lam = (u_i c) g (c^-1 v_lam)`` gives the new gauge.

    Returns:
        The rewritten quadruple, or None if the map is not in Iso(S;T)(1_G)
    """
    if iso.source != semigroup or iso.source.group != iso.target.group:
        return None
    group = semigroup.group
    if iso.theta.images == tuple(group.elements):
        return iso
    c = inner_witness(iso.theta)
    if c is None:
        return None
    c_inverse = group.inverse(c)
    return ReesIso(
        source=iso.source,
        target=iso.target,
        theta=GroupMap.identity(group),
        psi=iso.psi,
        u=tuple(group.multiply(u_i, c) for u_i in iso.u),
        v=tuple(group.multiply(c_inverse, v_lam) for v_lam in iso.v),
    )


def isomorphisms_over_identity(
    source: ReesMatrixSemigroup,
    target: ReesMatrixSemigroup,
    max_isomorphisms: int = DEFAULT_LIMITS["max_isomorphisms"],
) -> list[ReesIso]:
    """Iso(S;T)(1_G): the isomorphisms whose induced group map can be taken trivial."""
    found = []
    for iso in enumerate_isos(source, target, max_isomorphisms=max_isomorphisms):
        trivial = try_trivialize(source, iso)
        if trivial is not None:
            found.append(trivial)
    return found


# Components


class ComponentSplit(NamedTuple):
    """An isomorphism split along connected Rees components.

    Attributes:
        permutation: ``permutation[k]`` is the target component receiving source component k
        restrictions: The isomorphism ``S_k -> T_{k pi}`` for each k
    """

    permutation: tuple[int, ...]
    restrictions: tuple[ReesIso, ...]


def decompose_by_components(
    semigroup: ReesMatrixSemigroup,
    iso: ReesIso,
    source_parts: Optional[ReesComponentDecomposition] = None,
    target_parts: Optional[ReesComponentDecomposition] = None,
) -> ComponentSplit:
    """Restrict an isomorphism to every connected Rees component.

    All restrictions share the induced group isomorphism of ``iso``.
    """
    source_parts = source_parts or decompose_components(semigroup)
    target_parts = target_parts or decompose_components(iso.target)
    left_home = {i: k for k, part in enumerate(target_parts.components) for i in part.left}

    permutation = []
    restrictions = []
    for k, part in enumerate(source_parts.components):
        image_k = left_home[iso.psi.left_map[part.left[0]]]
        image_part = target_parts.components[image_k]
        permutation.append(image_k)
        restrictions.append(
            ReesIso(
                source=source_parts.component_semigroups[k],
                target=target_parts.component_semigroups[image_k],
                theta=iso.theta,
                psi=BipartiteIso(
                    tuple(image_part.left.index(iso.psi.left_map[i]) for i in part.left),
                    tuple(image_part.right.index(iso.psi.right_map[lam]) for lam in part.right),
                ),
                u=tuple(iso.u[i] for i in part.left),
                v=tuple(iso.v[lam] for lam in part.right),
            ),
        )
    return ComponentSplit(tuple(permutation), tuple(restrictions))


def assemble_from_components(
    source: ReesMatrixSemigroup,
    target: ReesMatrixSemigroup,
    permutation: Sequence[int],
    restrictions: Sequence[ReesIso],
) -> ReesIso:
    """Glue per-component isomorphisms sharing one theta into an isomorphism of S.

    Raises:
        ShapeMismatchError: If the restrictions carry different group isomorphisms or miss a component
    """
    source_parts, target_parts = decompose_components(source), decompose_components(target)
    if len(restrictions) != len(source_parts.components) or len(permutation) != len(restrictions):
        msg = "Need exactly one restriction per connected component"
        raise ShapeMismatchError(msg)
    thetas = {restriction.theta.images for restriction in restrictions}
    if len(thetas) != 1:
        msg = "Component isomorphisms must all induce the same group isomorphism"
        raise ShapeMismatchError(msg)

    left_map = [0] * source.index_size
    right_map = [0] * source.lambda_size
    u = [0] * source.index_size
    v = [0] * source.lambda_size
    for part, image_k, restriction in zip(source_parts.components, permutation, restrictions):
        image_part = target_parts.components[image_k]
        for a, i in enumerate(part.left):
            left_map[i] = image_part.left[restriction.psi.left_map[a]]
            u[i] = restriction.u[a]
        for b, lam in enumerate(part.right):
            right_map[lam] = image_part.right[restriction.psi.right_map[b]]
            v[lam] = restriction.v[b]
    theta = GroupMap(source.group, target.group, restrictions[0].theta.images)
    return ReesIso(source, target, theta, BipartiteIso(tuple(left_map), tuple(right_map)), tuple(u), tuple(v))


def component_eta(
    semigroup: ReesMatrixSemigroup,
    parts: Optional[ReesComponentDecomposition] = None,
) -> list[tuple[int, ...]]:
    """Classes of components k, l with Iso(S_k;S_l)(1_G) nonempty."""
    parts = parts or decompose_components(semigroup)
    pieces = parts.component_semigroups
    classes = DisjointSet(len(pieces))
    for k, l in itertools.combinations(range(len(pieces)), 2):
        if classes.find(k) == classes.find(l):
            continue
        if isomorphisms_over_identity(pieces[k], pieces[l]):
            classes.union(k, l)
    return classes.classes()


def component_psi_system(semigroup: ReesMatrixSemigroup) -> PsiSystem:
    """The connected-component system of S with ``Psi_{k,l} = Iso(S_k;S_l)(1_G)``.

    Components are embedded in S (the zero shared), the partition is the
    classes of ``component_eta``, and every map is a dict over element indices of S.
    """
    parts = decompose_components(semigroup)
    pieces = parts.component_semigroups
    family = tuple(frozenset(embedding) for embedding in parts.embeddings)
    maps: dict[tuple[int, int], list[dict[int, int]]] = {}
    for k, l in itertools.product(range(len(pieces)), repeat=2):
        maps[(k, l)] = [
            {parts.embeddings[k][x]: parts.embeddings[l][apply_iso(iso, x)] for x in range(pieces[k].order)}
            for iso in isomorphisms_over_identity(pieces[k], pieces[l])
        ]
    return PsiSystem(
        semigroup=semigroup.as_semigroup,
        family=family,
        partition=tuple(component_eta(semigroup, parts)),
        maps=maps,
    )
