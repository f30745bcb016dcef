"""Constants for structure file parsing."""

from __future__ import annotations

# Everything after this character on a line is ignored
COMMENT_CHAR = "#"

# Zero entry of a sandwich matrix
ZERO_TOKEN = "."

# Pulls a block from another file, path relative to the including file
INCLUDE_KEYWORD = "include"

# Header keyword of every top-level structure block
STRUCTURE_KEYWORDS = {
    "group": "finite group as a Cayley table, element 0 the identity",
    "semigroup": "finite semigroup as a multiplication table",
    "rband": "rectangular band given by its two side sizes",
    "semilattice": "finite semilattice as a meet table",
    "bigraph": "bipartite graph as an edge list, optionally labelled",
    "rees": "Rees matrix semigroup: a group block and a sandwich matrix",
    "sss": "strong semilattice: a semilattice, components and connecting maps",
}

# Blocks allowed as components of a strong semilattice
COMPONENT_KEYWORDS = ("group", "semigroup", "rband")

# File suffixes used by the bundled samples
SAMPLE_SUFFIXES = {
    ".group": "group",
    ".sg": "semigroup",
    ".rb": "rband",
    ".slat": "semilattice",
    ".bg": "bigraph",
    ".rees": "rees",
    ".sss": "sss",
    ".set": "fix set",
}
