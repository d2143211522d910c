"""
有限域模块

提供 GF(p^k) 的精确运算、Frobenius 映射、本原素因子与正规基。
"""

from src.fields.galois import (
    GaloisField,
    FieldElement,
    make_field,
    field_of_order,
    split_prime_power,
    is_irreducible,
    parse_element,
    format_element,
    parse_field,
    describe_field,
    frobenius,
    conjugate,
)
from src.fields.number_theory import zsigmondy_prime, multiplicative_order
from src.fields.normal_basis import (
    frobenius_orbit,
    frobenius_orbit_rank,
    normal_basis_generator,
    subfield_embedding,
    normal_basis_coordinates,
)
from src.fields.linalg import rank, solve, determinant

__all__ = [
    "GaloisField",
    "FieldElement",
    "make_field",
    "field_of_order",
    "split_prime_power",
    "is_irreducible",
    "parse_element",
    "format_element",
    "parse_field",
    "describe_field",
    "frobenius",
    "conjugate",
    "zsigmondy_prime",
    "multiplicative_order",
    "frobenius_orbit",
    "frobenius_orbit_rank",
    "normal_basis_generator",
    "subfield_embedding",
    "normal_basis_coordinates",
    "rank",
    "solve",
    "determinant",
]
