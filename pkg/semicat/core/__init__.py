"""Core functionality for the semicat library."""

from semicat.core.exceptions import (
    ConsistencyError,
    ParseError,
    SemicatError,
    SizeLimitExceededError,
    UnknownCommandError,
    ValidationError,
)
from semicat.core.groups import FiniteGroup, GroupMap, group_automorphisms, group_from_table
from semicat.core.finsemi import FiniteSemigroup, RectangularBand, brute_force_isomorphisms, semigroup_from_table
from semicat.core.bigraph import BipartiteGraph, BipartiteIso, LabelledBipartiteGraph, classify_homogeneous
from semicat.core.rees import ReesMatrixSemigroup, graham_normalize, rees_construct, structural_predicates
from semicat.core.orbits import PermutationGroup, oligomorphy_profile
from semicat.core.reesiso import ReesIso, enumerate_isos, validate_iso
from semicat.core.semilat import Semilattice, StrongSemilattice, sss_construct
from semicat.core.structure_analyzer import StructureAnalyzer

__all__ = [
    "BipartiteGraph",
    "BipartiteIso",
    "ConsistencyError",
    "FiniteGroup",
    "FiniteSemigroup",
    "GroupMap",
    "LabelledBipartiteGraph",
    "ParseError",
    "PermutationGroup",
    "RectangularBand",
    "ReesIso",
    "ReesMatrixSemigroup",
    "SemicatError",
    "Semilattice",
    "SizeLimitExceededError",
    "StrongSemilattice",
    "StructureAnalyzer",
    "UnknownCommandError",
    "ValidationError",
    "brute_force_isomorphisms",
    "classify_homogeneous",
    "enumerate_isos",
    "graham_normalize",
    "group_automorphisms",
    "group_from_table",
    "oligomorphy_profile",
    "rees_construct",
    "semigroup_from_table",
    "sss_construct",
    "structural_predicates",
    "validate_iso",
]
