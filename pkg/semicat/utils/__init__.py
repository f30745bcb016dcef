"""Utility functions and classes for semicat."""

from __future__ import annotations

from semicat.utils.disjoint_set import DisjointSet
from semicat.utils.patterns import equality_pattern, natural_equivalent
from semicat.utils.tables import (
    closure,
    compose_maps,
    find_nonassociative_triple,
    generating_set,
    invert_map,
    is_homomorphism,
    normalize_table,
    refine_colours,
    search_isomorphisms,
)

__all__ = [
    "DisjointSet",
    "closure",
    "compose_maps",
    "equality_pattern",
    "find_nonassociative_triple",
    "generating_set",
    "invert_map",
    "is_homomorphism",
    "natural_equivalent",
    "normalize_table",
    "refine_colours",
    "search_isomorphisms",
]
