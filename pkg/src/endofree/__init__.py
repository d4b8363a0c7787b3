"""Free algebras, their endomorphism monoids and automorphisms of End(F)."""
from .endaut import (Compose, ConjBij, Inner, Mirror, PrimePerm, PrimePermutation, SemiInner,
                     apply_aut, check_potinner, main_permutation, parse_aut, verify_endaut)
from .endo import Endo, apply_endo, compose, inverse_endo, is_automorphism, make_endo, parse_endo
from .matrix import BasisMatrix, matrix_of, two_matrix_criterion
from .rings import Ring, RingAut, parse_ring
from .terms import canonicalize, parse_element, parse_term, substitute
from .varieties import (FreeGroup, FreeInverseSemigroup, FreeModule, FreeSemigroup,
                        enumerate_elements, make_variety)
from .verdict import Status, Verdict

__version__ = "0.1.0"

__all__ = [
    "BasisMatrix", "Compose", "ConjBij", "Endo", "FreeGroup", "FreeInverseSemigroup",
    "FreeModule", "FreeSemigroup", "Inner", "Mirror", "PrimePerm", "PrimePermutation", "Ring",
    "RingAut", "SemiInner", "Status", "Verdict", "apply_aut", "apply_endo", "canonicalize",
    "check_potinner", "compose", "enumerate_elements", "inverse_endo", "is_automorphism",
    "main_permutation", "make_endo", "make_variety", "matrix_of", "parse_aut", "parse_element",
    "parse_endo", "parse_ring", "parse_term", "substitute", "two_matrix_criterion",
    "verify_endaut",
]
