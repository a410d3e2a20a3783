"""Isaacs groups, Camina pairs and Gagola characters on small finite groups."""
from .arith import generalized_zsigmondy, isaacs_degree
from .census import classify_e_prime, classify_p_closed, isaacs_gate, verify_structure
from .chartable import character_table, degree_multiset, format_multiset
from .group import CayleyGroup

__version__ = "0.1.0"

__all__ = [
    "CayleyGroup",
    "character_table",
    "classify_e_prime",
    "classify_p_closed",
    "degree_multiset",
    "format_multiset",
    "generalized_zsigmondy",
    "isaacs_degree",
    "isaacs_gate",
    "verify_structure",
]
