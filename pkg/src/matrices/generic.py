"""
置换矩阵形式的一般序列
"""

from typing import List

from src.fields.galois import field_of_order
from src.matrices.matrix import FieldMatrix, permutation_matrix
from src.permutations.generic import generic_sequence


def sl_generic_sequence(m: int, q: int, t: int) -> List[FieldMatrix]:
    """标准一般序列在标准基下的置换矩阵"""
    field = field_of_order(q)
    return [permutation_matrix(p, field) for p in generic_sequence(m, t).elements]


__all__ = ["sl_generic_sequence"]
