"""Graphs with loops and multiple edges in four categories: constructions,
morphism predicates, the image factorization, and reconstruction decks."""

from .fmt import FmtFactorization, check_fmt, fmt_factorize, image_oracle, kernel_pair_oracle
from .formats import format_graph, parse_graph, read_graph, read_morphism, to_dot
from .graph import Category, Graph, Kind, Part, edge, incidence_of, part_set, validate_in_category, vertex
from .limits import ConeResult, coequalizer, coproduct, equalizer, product, verify_universal_property
from .morphism import (
    Morphism,
    compose,
    find_isomorphism,
    identity,
    inclusion,
    is_epi,
    is_iso,
    is_mono,
    validate_morphism,
)
from .reconstruction import Mode, corpus_sweep, make_deck, match_decks, reconstruction_check

__all__ = [
    "Category", "ConeResult", "FmtFactorization", "Graph", "Kind", "Mode", "Morphism", "Part",
    "check_fmt", "coequalizer", "compose", "coproduct", "corpus_sweep", "edge", "equalizer",
    "find_isomorphism", "fmt_factorize", "format_graph", "identity", "image_oracle",
    "incidence_of", "inclusion", "is_epi", "is_iso", "is_mono", "kernel_pair_oracle",
    "make_deck", "match_decks", "parse_graph", "part_set", "product", "read_graph",
    "read_morphism", "reconstruction_check", "to_dot", "validate_in_category",
    "validate_morphism", "verify_universal_property", "vertex",
]
