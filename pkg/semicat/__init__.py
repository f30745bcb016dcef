"""semicat - Automorphisms, isomorphisms and orbit counts of finite semigroups and bipartite graphs."""

# Core first: the analyzer it exports pulls in the parsers
from semicat.core import (
    BipartiteGraph,
    FiniteGroup,
    FiniteSemigroup,
    ReesMatrixSemigroup,
    SemicatError,
    StrongSemilattice,
    StructureAnalyzer,
    brute_force_isomorphisms,
    enumerate_isos,
    graham_normalize,
    oligomorphy_profile,
)
from semicat.parsers import parse_structure, parse_text
from semicat.schema.config import AnalysisConfig
from semicat.schema.report import Report
from semicat.verify import SuiteResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "BipartiteGraph",
    "FiniteGroup",
    "FiniteSemigroup",
    "ReesMatrixSemigroup",
    "Report",
    "SemicatError",
    "StrongSemilattice",
    "StructureAnalyzer",
    "SuiteResult",
    "brute_force_isomorphisms",
    "enumerate_isos",
    "graham_normalize",
    "oligomorphy_profile",
    "parse_structure",
    "parse_text",
    "run_suite",
]
