"""Seeded instance corpora for the verification suites.

Every generator here is deterministic for a given seed, so two runs of a
suite examine the same instances in the same order.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterator
from typing import NamedTuple, Optional, TypeVar

from semicat.core.bigraph import BipartiteIso
from semicat.core.finsemi import FiniteSemigroup, RectangularBand, left_zero, right_zero, semigroup_from_group
from semicat.core.groups import FiniteGroup, GroupMap, cyclic_group, group_automorphisms, group_direct_product
from semicat.core.rees import Entry, ReesMatrixSemigroup, brandt_semigroup, rees_construct, rees_from_rows, sandwich_matrix
from semicat.core.reesiso import ReesIso
from semicat.core.semilat import Semilattice, StrongSemilattice, chain, semilattice_from_table, sss_construct
from semicat.utils.tables import is_homomorphism

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601

T = TypeVar("T")


class CorpusInstance(NamedTuple):
    """A named Rees matrix semigroup."""

    name: str
    semigroup: ReesMatrixSemigroup


def corpus_groups(quick: bool = False) -> dict[str, FiniteGroup]:
    """The groups of order at most 4, up to isomorphism."""
    z2 = cyclic_group(2)
    groups = {"Z1": cyclic_group(1), "Z2": z2, "Z2xZ2": group_direct_product(z2, z2)}
    if not quick:
        groups.update({"Z3": cyclic_group(3), "Z4": cyclic_group(4)})
    return groups


def random_matrix(rng: random.Random, group: FiniteGroup, rows: int, cols: int, density: float = 0.6) -> list[list[Entry]]:
    """A random regular ``rows x cols`` matrix; empty rows and columns get one random entry."""
    entries: list[list[Entry]] = [
        [rng.randrange(group.order) if rng.random() < density else None for _ in range(cols)] for _ in range(rows)
    ]
    for lam in range(rows):
        if all(entry is None for entry in entries[lam]):
            entries[lam][rng.randrange(cols)] = rng.randrange(group.order)
    for i in range(cols):
        if all(entries[lam][i] is None for lam in range(rows)):
            entries[rng.randrange(rows)][i] = rng.randrange(group.order)
    return entries


def scrambled_copy(rng: random.Random, semigroup: ReesMatrixSemigroup) -> tuple[ReesMatrixSemigroup, ReesIso]:
    """A random isomorphic copy of ``semigroup`` together with an isomorphism onto it.

    A random quadruple ``(theta, psi, u, v)`` is drawn and the target matrix
    solved from ``p_{lam,i} theta = v_lam q_{lam psi, i psi} u_i``.
    """
    group, matrix = semigroup.group, semigroup.matrix
    theta = rng.choice(group_automorphisms(group))
    left = list(range(semigroup.index_size))
    right = list(range(semigroup.lambda_size))
    rng.shuffle(left)
    rng.shuffle(right)
    u = tuple(rng.randrange(group.order) for _ in range(semigroup.index_size))
    v = tuple(rng.randrange(group.order) for _ in range(semigroup.lambda_size))

    entries: list[list[Entry]] = [[None] * semigroup.index_size for _ in range(semigroup.lambda_size)]
    for lam, i in matrix.nonzero():
        entries[right[lam]][left[i]] = group.multiply(
            group.inverse(v[lam]),
            theta(matrix.entry(lam, i)),
            group.inverse(u[i]),
        )
    target = rees_construct(group, sandwich_matrix(entries))
    iso = ReesIso(semigroup, target, GroupMap(group, group, theta.images), BipartiteIso(tuple(left), tuple(right)), u, v)
    return target, iso


def rees_corpus(seed: int = DEFAULT_SEED, quick: bool = False, random_per_shape: int = 4) -> list[CorpusInstance]:
    """Structured and random Rees matrix semigroups with ``|G| <= 4`` and ``|I|, |Lambda| <= 3``.

    Per group and shape: the all-identity matrix, the Brandt matrix when
    square, and ``random_per_shape`` random regular matrices.
    """
    rng = random.Random(seed)
    largest = 2 if quick else 3
    per_shape = 1 if quick else random_per_shape
    instances = []
    for name, group in corpus_groups(quick).items():
        for rows, cols in itertools.product(range(1, largest + 1), repeat=2):
            shape = f"{name}:{rows}x{cols}"
            instances.append(CorpusInstance(f"{shape}:full", rees_from_rows(group, [[0] * cols] * rows)))
            if rows == cols:
                instances.append(CorpusInstance(f"{shape}:brandt", brandt_semigroup(group, rows)))
            for k in range(per_shape):
                semigroup = rees_from_rows(group, random_matrix(rng, group, rows, cols))
                instances.append(CorpusInstance(f"{shape}:random{k}", semigroup))
    logger.debug("Rees corpus of %d instances (seed %d)", len(instances), seed)
    return instances


def all_regular_matrices(group: FiniteGroup, rows: int, cols: int) -> Iterator[ReesMatrixSemigroup]:
    """Every Rees matrix semigroup over ``group`` with a regular ``rows x cols`` matrix."""
    values: list[Entry] = [None, *group.elements]
    for flat in itertools.product(values, repeat=rows * cols):
        entries = [list(flat[lam * cols : (lam + 1) * cols]) for lam in range(rows)]
        if any(all(entry is None for entry in row) for row in entries):
            continue
        if any(all(entries[lam][i] is None for lam in range(rows)) for i in range(cols)):
            continue
        yield ReesMatrixSemigroup(group, sandwich_matrix(entries))


# Strong semilattices


def v_semilattice() -> Semilattice:
    """``{0, 1, 2}`` with ``1 /\\ 2 = 0``."""
    return semilattice_from_table([[0, 0, 0], [0, 1, 0], [0, 0, 2]])


class CatalogueEntry(NamedTuple):
    """A named strong semilattice and the family its components come from."""

    name: str
    semilattice: StrongSemilattice
    family: str


def _homomorphisms(source: FiniteSemigroup, target: FiniteSemigroup) -> list[tuple[int, ...]]:
    return [
        images
        for images in itertools.product(target.elements, repeat=source.order)
        if is_homomorphism(source.table, target.table, images)
    ]


def component_pool(quick: bool = False) -> dict[str, tuple[FiniteSemigroup, str]]:
    """Small components, each tagged ``group``, ``band`` or ``semilattice``."""
    pool = {
        "C2": (chain(2).as_semigroup(), "semilattice"),
        "Z1": (semigroup_from_group(cyclic_group(1)), "group"),
        "Z2": (semigroup_from_group(cyclic_group(2)), "group"),
        "RB1x2": (RectangularBand(1, 2).to_semigroup(), "band"),
        "RB2x1": (RectangularBand(2, 1).to_semigroup(), "band"),
    }
    if not quick:
        pool.update(
            {
                "Z3": (semigroup_from_group(cyclic_group(3)), "group"),
                "RB2x2": (RectangularBand(2, 2).to_semigroup(), "band"),
                "LZ3": (left_zero(3), "band"),
                "RZ3": (right_zero(3), "band"),
            },
        )
    return pool


def _family(tags: list[str]) -> str:
    kinds = set(tags)
    return kinds.pop() if len(kinds) == 1 else "mixed"


def _spread(items: list[T], count: int) -> list[T]:
    """At most ``count`` items, evenly spaced and always including the first."""
    if len(items) <= count:
        return items
    step = len(items) / count
    return [items[int(k * step)] for k in range(count)]


def sss_catalogue(
    quick: bool = False,
    max_flat: int = 12,
    per_shape: int = 3,
    max_entries: Optional[int] = None,
) -> list[CatalogueEntry]:
    """Strong semilattices over the 2-chain, the 3-chain and the V.

    Connectors are homomorphisms on each covering pair, composed along the
    chain; at most ``per_shape`` connector families are kept per choice of
    components. The 3-element semilattices only use components of order at
    most 2. Entries with a flattened order above ``max_flat`` are skipped.
    """
    pool = component_pool(quick)
    names = sorted(pool)
    small = [name for name in names if pool[name][0].order <= 2]
    found: list[CatalogueEntry] = []

    def add(name: str, lattice: Semilattice, parts: list[str], connectors: dict[tuple[int, int], tuple[int, ...]]) -> None:
        semilattice = sss_construct(lattice, [pool[part][0] for part in parts], connectors)
        found.append(CatalogueEntry(name, semilattice, _family([pool[part][1] for part in parts])))

    two, three = chain(2), chain(3)
    for top, bottom in itertools.product(names, repeat=2):
        source, target = pool[top][0], pool[bottom][0]
        if source.order + target.order > max_flat:
            continue
        for k, down in enumerate(_spread(_homomorphisms(source, target), per_shape)):
            add(f"chain2[{bottom}<{top}]#{k}", two, [bottom, top], {(1, 0): down})

    if not quick:
        for bottom, middle, top in itertools.product(small, repeat=3):
            parts = [pool[bottom][0], pool[middle][0], pool[top][0]]
            if sum(part.order for part in parts) > max_flat:
                continue
            for k, (down_top, down_middle) in enumerate(
                _spread(list(itertools.product(_homomorphisms(parts[2], parts[1]), _homomorphisms(parts[1], parts[0]))), per_shape),
            ):
                composite = tuple(down_middle[y] for y in down_top)
                connectors = {(2, 1): down_top, (1, 0): down_middle, (2, 0): composite}
                add(f"chain3[{bottom}<{middle}<{top}]#{k}", three, [bottom, middle, top], connectors)

    vee = v_semilattice()
    for bottom, left, right in itertools.product(small, repeat=3):
        parts = [pool[bottom][0], pool[left][0], pool[right][0]]
        if left > right or sum(part.order for part in parts) > max_flat:
            continue
        for k, (first, second) in enumerate(
            _spread(list(itertools.product(_homomorphisms(parts[1], parts[0]), _homomorphisms(parts[2], parts[0]))), per_shape),
        ):
            add(f"vee[{bottom}<{left},{right}]#{k}", vee, [bottom, left, right], {(1, 0): first, (2, 0): second})

    if max_entries is not None:
        found = found[:max_entries]
    logger.debug("Strong semilattice catalogue of %d entries", len(found))
    return found
