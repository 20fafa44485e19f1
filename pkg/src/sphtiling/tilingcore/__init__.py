"""Combinatorial tilings: data model, search, builders, flips and merges."""
from .tiling import (
    CombinatorialTiling,
    Face,
    ValidationReport,
    aad_holds,
    automorphism_count,
    canonical_form,
    extract_avc,
    validate,
)
from .search import SearchResult, search_tilings
from .flip import ChainBound, FlipSite, find_flip_sites, flip_20_24, flip_k, flip_sequence
from .merges import build_icosahedron, count_matchings_bruteforce, icosahedral_merges

__all__ = [
    "CombinatorialTiling",
    "Face",
    "ValidationReport",
    "aad_holds",
    "automorphism_count",
    "canonical_form",
    "extract_avc",
    "validate",
    "SearchResult",
    "search_tilings",
    "ChainBound",
    "FlipSite",
    "find_flip_sites",
    "flip_20_24",
    "flip_k",
    "flip_sequence",
    "build_icosahedron",
    "count_matchings_bruteforce",
    "icosahedral_merges",
]
