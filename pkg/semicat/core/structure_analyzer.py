"""Structure analysis: the operations behind every semicat command."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, Optional, Union

from semicat.core.bigraph import (
    BipartiteGraph,
    BipartiteIso,
    LabelledBipartiteGraph,
    bigraph_automorphisms,
    bigraph_isomorphisms,
    brute_force_bigraph_isomorphisms,
    classify_homogeneous,
    components,
    tau_classes,
)
from semicat.core.exceptions import (
    ConnectorNotBijectiveError,
    ConsistencyError,
    DomainMismatchError,
    PreconditionFailsError,
    ValidationError,
)
from semicat.core.finsemi import (
    FiniteSemigroup,
    RectangularBand,
    band_automorphisms,
    brute_force_isomorphisms,
    is_e_unitary,
    semigroup_from_group,
)
from semicat.core.groups import FiniteGroup, brute_force_group_automorphisms, group_automorphisms, group_isomorphisms
from semicat.core.orbits import (
    from_maps,
    natural_class_count,
    oligomorphy_profile,
    set_extension_stabilizer,
)
from semicat.core.rees import (
    ReesMatrixSemigroup,
    decompose_components,
    graham_normalize,
    induced_graph,
    spanning_forest,
    structural_predicates,
)
from semicat.core.reesiso import component_eta, element_map, enumerate_isos
from semicat.core.semilat import (
    Semilattice,
    StrongSemilattice,
    connectors_injective,
    eta_relation,
    is_automorphism_pure,
    iso_to_product,
    semilattice_automorphisms,
    sss_automorphisms,
    sss_flat_automorphism,
    upsilon_relation,
    xi_relation,
)
from semicat.parsers.loader import parse_structure
from semicat.schema.config import AnalysisConfig
from semicat.utils.tables import ElementMap

# Set up logging
logger = logging.getLogger(__name__)

Structure = Union[
    FiniteGroup,
    FiniteSemigroup,
    BipartiteGraph,
    LabelledBipartiteGraph,
    ReesMatrixSemigroup,
    RectangularBand,
    Semilattice,
    StrongSemilattice,
]

KINDS: dict[type, str] = {
    FiniteGroup: "group",
    FiniteSemigroup: "semigroup",
    BipartiteGraph: "bigraph",
    LabelledBipartiteGraph: "bigraph",
    ReesMatrixSemigroup: "rees",
    RectangularBand: "rband",
    Semilattice: "semilattice",
    StrongSemilattice: "sss",
}

METHODS = ("structured", "brute")

ORBIT_NOTE = (
    "Orbit counts are finite evidence only: they are computed for tuples up to the given length "
    "on a finite structure and do not decide oligomorphy or categoricity of any infinite structure."
)

CLASSIFY_NOTE = (
    "On sides of size at most 2 the families overlap; the first match in the order "
    "Complete, Empty, PerfectMatching, ComplementPerfectMatching is reported."
)

# Error messages
ERR_NOT_APPLICABLE = "{command} does not apply to a {kind}"
ERR_UNKNOWN_METHOD = "Unknown method {method!r}, expected one of: structured, brute"


def jsonable(value: Any) -> Any:
    """Convert results to JSON-safe values: sets become sorted lists, tuples lists, tuple keys strings."""
    if isinstance(value, dict):
        return {(",".join(map(str, key)) if isinstance(key, tuple) else str(key)): jsonable(item) for key, item in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(item) for item in value)
    if isinstance(value, (list, tuple, range)):
        return [jsonable(item) for item in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def _bigraph_map(graph: Union[BipartiteGraph, LabelledBipartiteGraph], iso: BipartiteIso) -> ElementMap:
    """Number vertices left then right and read ``iso`` as one permutation."""
    plain = graph.graph if isinstance(graph, LabelledBipartiteGraph) else graph
    return tuple(iso.left_map) + tuple(plain.left_size + r for r in iso.right_map)


class StructureAnalyzer:
    """Runs the semicat operations on one parsed structure.

    Args:
        source (Union[str, Path, Structure]): A structure file or an already built structure
        config (Optional[AnalysisConfig]): Search bounds and self-check setting

    Attributes:
        path (Optional[Path]): The structure file, when read from disk
        structure (Structure): The validated structure
        config (AnalysisConfig): Search bounds and self-check setting
    """

    def __init__(self, source: Union[str, Path, Structure], config: Optional[AnalysisConfig] = None) -> None:
        self.config = config or AnalysisConfig()
        if isinstance(source, (str, Path)):
            self.path: Optional[Path] = Path(source)
            self.structure: Structure = parse_structure(self.path)
        else:
            self.path = None
            self.structure = source
        logger.debug("Analyzing %s structure from %s", self.kind, self.path or "memory")

    @property
    def kind(self) -> str:
        """File keyword of the structure's type."""
        return KINDS[type(self.structure)]

    @property
    def degree(self) -> int:
        """Size of the carrier automorphisms act on."""
        structure = self.structure
        if isinstance(structure, LabelledBipartiteGraph):
            structure = structure.graph
        if isinstance(structure, BipartiteGraph):
            return structure.left_size + structure.right_size
        return structure.order

    def as_semigroup(self) -> FiniteSemigroup:
        """The structure as a multiplication table, for the brute-force oracle.

        Raises:
            ValidationError: For bipartite graphs, which carry no multiplication
        """
        structure = self.structure
        if isinstance(structure, FiniteSemigroup):
            return structure
        if isinstance(structure, FiniteGroup):
            return semigroup_from_group(structure)
        if isinstance(structure, ReesMatrixSemigroup):
            return structure.as_semigroup
        if isinstance(structure, RectangularBand):
            return structure.to_semigroup()
        if isinstance(structure, Semilattice):
            return structure.as_semigroup()
        if isinstance(structure, StrongSemilattice):
            return structure.flatten
        msg = f"A {self.kind} has no multiplication table"
        raise ValidationError(msg)

    def _require(self, command: str, *types: type) -> None:
        if not isinstance(self.structure, types):
            msg = ERR_NOT_APPLICABLE.format(command=command, kind=self.kind)
            raise ValidationError(msg)

    # check

    def check(self) -> dict[str, Any]:
        """Summarize the validated structure."""
        structure = self.structure
        summary: dict[str, Any] = {"kind": self.kind, "valid": True}
        if isinstance(structure, FiniteGroup):
            summary["order"] = structure.order
            summary["element_orders"] = [structure.element_order(x) for x in structure.elements]
        elif isinstance(structure, FiniteSemigroup):
            summary.update(order=structure.order, zero=structure.zero, idempotents=structure.idempotents)
        elif isinstance(structure, (BipartiteGraph, LabelledBipartiteGraph)):
            plain = structure.graph if isinstance(structure, LabelledBipartiteGraph) else structure
            summary.update(left=plain.left_size, right=plain.right_size, edges=plain.edges())
            if isinstance(structure, LabelledBipartiteGraph):
                summary["alphabet"] = list(structure.alphabet)
        elif isinstance(structure, ReesMatrixSemigroup):
            summary.update(
                group_order=structure.group.order,
                index_size=structure.index_size,
                lambda_size=structure.lambda_size,
                order=structure.order,
                nonzero_entries=len(structure.matrix.nonzero()),
            )
        elif isinstance(structure, RectangularBand):
            summary.update(left=structure.left_size, right=structure.right_size, order=structure.order)
        elif isinstance(structure, Semilattice):
            summary.update(order=structure.order, zero=structure.zero)
        else:
            summary.update(
                lattice_order=structure.lattice.order,
                component_orders=[part.order for part in structure.components],
                order=structure.order,
                constant=structure.constants is not None,
            )
        return jsonable(summary)

    # Automorphisms

    def _structured_maps(self) -> list[ElementMap]:
        structure = self.structure
        if isinstance(structure, ReesMatrixSemigroup):
            isos = enumerate_isos(structure, structure, max_isomorphisms=self.config.max_isomorphisms)
            return [element_map(iso) for iso in isos]
        if isinstance(structure, FiniteGroup):
            return [a.images for a in group_automorphisms(structure, self_check=self.config.self_check)]
        if isinstance(structure, (BipartiteGraph, LabelledBipartiteGraph)):
            return sorted(_bigraph_map(structure, iso) for iso in bigraph_automorphisms(structure, respect_labels=True))
        if isinstance(structure, RectangularBand):
            return [a.images() for a in band_automorphisms(structure)]
        if isinstance(structure, Semilattice):
            return semilattice_automorphisms(structure)
        if isinstance(structure, StrongSemilattice):
            return self._sss_maps(structure)
        logger.warning("No structured search for a plain semigroup; using brute force")
        return self._brute_maps()

    def _sss_maps(self, structure: StrongSemilattice) -> list[ElementMap]:
        """Component-wise automorphisms, plus the flat automorphisms that do not decompose.

        Raises:
            SizeLimitExceededError: If the flattened semigroup is above ``max_order``, so purity cannot be decided
        """
        max_order = self.config.max_order
        maps = {sss_flat_automorphism(structure, a) for a in sss_automorphisms(structure, max_order=max_order)}
        purity = is_automorphism_pure(structure, max_order=max_order)
        if not purity.pure:
            logger.warning(
                "Strong semilattice is not automorphism-pure: %d of %d automorphisms move a component across others",
                len(purity.witnesses),
                purity.automorphisms,
            )
            maps.update(purity.witnesses)
        return sorted(maps)

    def _brute_maps(self) -> list[ElementMap]:
        structure = self.structure
        if isinstance(structure, (BipartiteGraph, LabelledBipartiteGraph)):
            return sorted(
                _bigraph_map(structure, iso)
                for iso in brute_force_bigraph_isomorphisms(structure, structure, respect_labels=True)
            )
        if isinstance(structure, FiniteGroup):
            return [a.images for a in brute_force_group_automorphisms(structure)]
        semigroup = self.as_semigroup()
        return brute_force_isomorphisms(semigroup, semigroup, max_order=self.config.max_order)

    def automorphism_maps(self, method: str = "structured") -> list[ElementMap]:
        """Aut of the structure as sorted element maps.

        Raises:
            ValidationError: On an unknown method
            ConsistencyError: If ``self_check`` is on and the oracle disagrees
        """
        if method not in METHODS:
            msg = ERR_UNKNOWN_METHOD.format(method=method)
            raise ValidationError(msg)
        if method == "brute":
            return self._brute_maps()
        maps = self._structured_maps()
        if self.config.self_check and self.degree <= self.config.max_order:
            oracle = set(self._brute_maps())
            found = set(maps)
            if found != oracle:
                msg = f"Structured search found {len(found)} automorphisms, brute force found {len(oracle)}"
                raise ConsistencyError(msg)
        return maps

    def automorphisms(self, method: str = "structured") -> dict[str, Any]:
        """Aut of the structure, with Rees quadruples when available."""
        maps = self.automorphism_maps(method)
        result: dict[str, Any] = {"kind": self.kind, "method": method, "count": len(maps), "maps": maps}
        if method == "structured" and isinstance(self.structure, ReesMatrixSemigroup):
            isos = enumerate_isos(self.structure, self.structure, max_isomorphisms=self.config.max_isomorphisms)
            result["quadruples"] = [iso.to_dict() for iso in isos]
        return jsonable(result)

    def isomorphisms(self, other: StructureAnalyzer) -> dict[str, Any]:
        """All isomorphisms onto another structure of the same kind.

        Raises:
            DomainMismatchError: If the structures are of different kinds
        """
        if self.kind != other.kind:
            msg = f"Cannot compare a {self.kind} with a {other.kind}"
            raise DomainMismatchError(msg)
        source, target = self.structure, other.structure
        result: dict[str, Any] = {"kind": self.kind}
        if isinstance(source, ReesMatrixSemigroup):
            isos = enumerate_isos(source, target, max_isomorphisms=self.config.max_isomorphisms)
            maps = [element_map(iso) for iso in isos]
            result["quadruples"] = [iso.to_dict() for iso in isos]
        elif isinstance(source, FiniteGroup):
            maps = [a.images for a in group_isomorphisms(source, target)]
        elif isinstance(source, (BipartiteGraph, LabelledBipartiteGraph)):
            maps = sorted(_bigraph_map(source, iso) for iso in bigraph_isomorphisms(source, target, respect_labels=True))
        else:
            maps = brute_force_isomorphisms(self.as_semigroup(), other.as_semigroup(), max_order=self.config.max_order)
        result.update(isomorphic=bool(maps), count=len(maps), maps=maps)
        return jsonable(result)

    # Orbits

    def orbits(
        self,
        n: Optional[int] = None,
        fix_sets: Sequence[Iterable[int]] = (),
        method: str = "both",
    ) -> dict[str, Any]:
        """Orbit counts of Aut (or the stabilizer of ``fix_sets``) on n-tuples.

        Raises:
            ValidationError: If a fixed set names an element outside the carrier
        """
        n = n or self.config.orbit_length
        degree = self.degree
        subsets = [frozenset(subset) for subset in fix_sets]
        for subset in subsets:
            outside = sorted(x for x in subset if not 0 <= x < degree)
            if outside:
                msg = f"Fixed set names {outside[0]}, outside the carrier 0..{degree - 1}"
                raise ValidationError(msg)

        group = from_maps(self.automorphism_maps("structured"), degree)
        acting = set_extension_stabilizer(group, subsets) if subsets else group
        profile = oligomorphy_profile(acting, n, method=method, max_tuples=self.config.max_tuples)
        return jsonable(
            {
                "kind": self.kind,
                "degree": degree,
                "group_order": group.order,
                "acting_order": acting.order,
                "fixed_sets": subsets,
                "n_max": n,
                "method": profile.method,
                "counts": profile.counts,
                "natural_counts": [natural_class_count(degree, k) for k in range(1, n + 1)],
                "note": ORBIT_NOTE,
            },
        )

    # Decompositions

    def decompose(self) -> dict[str, Any]:
        """Connected components of a Rees matrix semigroup or graph; eta, upsilon and xi for a strong semilattice."""
        structure = self.structure
        self._require("decompose", ReesMatrixSemigroup, StrongSemilattice, BipartiteGraph, LabelledBipartiteGraph)
        if isinstance(structure, ReesMatrixSemigroup):
            parts = decompose_components(structure)
            return jsonable(
                {
                    "kind": self.kind,
                    "components": [{"index": part.left, "lambda": part.right} for part in parts.components],
                    "row_order": parts.row_order,
                    "col_order": parts.col_order,
                    "block_matrix": parts.block_matrix.entries,
                    "eta": component_eta(structure, parts),
                },
            )
        if isinstance(structure, StrongSemilattice):
            return jsonable(self._decompose_sss(structure))
        return jsonable(
            {"kind": self.kind, "components": [{"left": part.left, "right": part.right} for part in components(structure)]},
        )

    def _decompose_sss(self, structure: StrongSemilattice) -> dict[str, Any]:
        max_order = self.config.max_order
        result: dict[str, Any] = {
            "kind": self.kind,
            "eta": eta_relation(structure, max_order=max_order),
            "connectors_injective": connectors_injective(structure),
        }
        notes = []
        try:
            result["upsilon"] = upsilon_relation(structure, max_order=max_order)
        except PreconditionFailsError as e:
            result["upsilon"] = None
            notes.append(f"upsilon: {e}")
        try:
            result["xi"] = xi_relation(structure)
        except PreconditionFailsError as e:
            result["xi"] = None
            notes.append(f"xi: {e}")
        try:
            product = iso_to_product(structure)
            result["product"] = {"base": product.base, "images": product.images}
        except ConnectorNotBijectiveError as e:
            result["product"] = None
            notes.append(f"product: {e}")
        result["notes"] = notes
        return result

    def normalize(self) -> dict[str, Any]:
        """Graham normal form of a Rees matrix semigroup with its gauge and spanning forest."""
        self._require("normalize", ReesMatrixSemigroup)
        normalized, iso = graham_normalize(self.structure)
        forest = spanning_forest(self.structure)
        return jsonable(
            {
                "kind": self.kind,
                "matrix": normalized.matrix.entries,
                "u": iso.u,
                "v": iso.v,
                "forest_roots": forest.roots,
                "forest_edges": [[f"{a.side}{a.index}", f"{b.side}{b.index}"] for a, b in forest.edges],
            },
        )

    def classify_graph(self) -> dict[str, Any]:
        """Homogeneous family of a bipartite graph, or of the induced graph of a Rees matrix semigroup."""
        self._require("classify-graph", BipartiteGraph, LabelledBipartiteGraph, ReesMatrixSemigroup)
        graph = induced_graph(self.structure) if isinstance(self.structure, ReesMatrixSemigroup) else self.structure
        family = classify_homogeneous(graph)
        result: dict[str, Any] = {"kind": self.kind, "class": str(family), "family": family.kind, "tau_classes": tau_classes(graph)}
        plain = graph.graph if isinstance(graph, LabelledBipartiteGraph) else graph
        if plain.left_size == plain.right_size <= 2:
            result["note"] = CLASSIFY_NOTE
        return jsonable(result)

    def predicates(self) -> dict[str, Any]:
        """Structural flags: Brandt, purity and orthodoxy for Rees; purity and injectivity for strong semilattices."""
        structure = self.structure
        result: dict[str, Any] = {"kind": self.kind}
        if isinstance(structure, ReesMatrixSemigroup):
            result.update(structural_predicates(structure)._asdict())
        elif isinstance(structure, StrongSemilattice):
            purity = is_automorphism_pure(structure, max_order=self.config.max_order)
            result.update(
                automorphism_pure=purity.pure,
                automorphisms=purity.automorphisms,
                impure_witnesses=purity.witnesses,
                connectors_injective=connectors_injective(structure),
            )
        else:
            semigroup = self.as_semigroup()
            result.update(idempotents=len(semigroup.idempotents), e_unitary=is_e_unitary(semigroup))
        return jsonable(result)
