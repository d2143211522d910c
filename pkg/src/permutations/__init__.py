"""
置换模块

提供 Alt(n)/Sym(n) 基础运算、分解见证，以及 uni1 / Brenner / uni2 分解与一般序列。
"""

from src.permutations.permutation import (
    Permutation,
    compose,
    inverse,
    cycle_type,
    parity,
    conjugate,
    order,
    parse_cycles,
    format_cycles,
    canonical_representative,
    aligning_conjugator,
    even_permutations_array,
)
from src.permutations.witness import Letter, FactorizationWitness
from src.permutations.uni1 import uni1_factor, uni1_predicates, uni1_theta, weyl_double_coset
from src.permutations.brenner import (
    brenner_factor,
    brenner_predicates,
    fixed_point_free_involutions,
    split_involution_product,
    is_involution_product,
)
from src.permutations.uni2 import uni2_factor, uni2_involution_factor, uni2_predicates, uni2_theta, in_gamma
from src.permutations.generic import (
    GenericSequence,
    generic_sequence,
    is_generic,
    orbit_decomposition,
    diagonal_centralizer_element,
    extend_generic,
    canonical_conjugator,
    find_conjugator_exhaustive,
    alt_class_count,
    enumerate_generic_sequences,
)

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "cycle_type",
    "parity",
    "conjugate",
    "order",
    "parse_cycles",
    "format_cycles",
    "canonical_representative",
    "aligning_conjugator",
    "even_permutations_array",
    "Letter",
    "FactorizationWitness",
    "uni1_factor",
    "uni1_predicates",
    "uni1_theta",
    "weyl_double_coset",
    "brenner_factor",
    "brenner_predicates",
    "fixed_point_free_involutions",
    "split_involution_product",
    "is_involution_product",
    "uni2_factor",
    "uni2_involution_factor",
    "uni2_predicates",
    "uni2_theta",
    "in_gamma",
    "GenericSequence",
    "generic_sequence",
    "is_generic",
    "orbit_decomposition",
    "diagonal_centralizer_element",
    "extend_generic",
    "canonical_conjugator",
    "find_conjugator_exhaustive",
    "alt_class_count",
    "enumerate_generic_sequences",
]
