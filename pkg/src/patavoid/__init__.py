"""Counting and enumerating pattern-avoiding compositions and multiset permutations."""

from patavoid.core import (
    CompositionQuery,
    DomainError,
    MultisetSpec,
    Pattern,
    PatavoidError,
    normalize_spec,
    validate_pattern,
    word_multiset,
)
from patavoid.avoidance import (
    S3,
    complement_word,
    contains,
    count_avoiders_multiset,
    count_avoiding_compositions,
    enumerate_compositions,
    enumerate_multiset_permutations,
    reverse_word,
)
from patavoid.genfun import composition_gf, f132_via_gf, g_k_series
from patavoid.bijection import match_parens, tau, tau_inverse, theta, theta_adjacent
from patavoid.asymptotics import K_infinity, K_of_k, growth_check, min_modulus_root

__version__ = "0.1.0"

__all__ = [
    "CompositionQuery",
    "DomainError",
    "MultisetSpec",
    "Pattern",
    "PatavoidError",
    "S3",
    "K_infinity",
    "K_of_k",
    "complement_word",
    "composition_gf",
    "contains",
    "count_avoiders_multiset",
    "count_avoiding_compositions",
    "enumerate_compositions",
    "enumerate_multiset_permutations",
    "f132_via_gf",
    "g_k_series",
    "growth_check",
    "match_parens",
    "min_modulus_root",
    "normalize_spec",
    "reverse_word",
    "tau",
    "tau_inverse",
    "theta",
    "theta_adjacent",
    "validate_pattern",
    "word_multiset",
]
