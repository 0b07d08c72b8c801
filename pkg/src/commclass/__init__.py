"""Reduced words, commutation classes and one-element commutation classes."""

from .perm import (Permutation, apply_word, compose, inverse, length, non_fixed_bounds,
                   parse_permutation)
from .words import (commutation_classes, count_reduced_words, reduced_words)
from .atoms import atoms_bruteforce, atoms_characterized, enumerate_atoms_all

__all__ = [
    "Permutation", "apply_word", "compose", "inverse", "length", "non_fixed_bounds",
    "parse_permutation", "commutation_classes", "count_reduced_words", "reduced_words",
    "atoms_bruteforce", "atoms_characterized", "enumerate_atoms_all",
]
