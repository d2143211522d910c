"""
矩阵群模块

GF(q) 上的矩阵运算、Bruhat 分解、SL 的有限生成分解、正则环面与共轭类覆盖 BFS。
"""

from src.matrices.matrix import (
    FieldMatrix,
    matmul,
    matinv,
    det,
    transpose,
    permutation_matrix,
    signed_permutation_matrix,
    permutation_of,
    sl_order,
    random_matrix,
    random_invertible,
    random_sl,
    format_matrix,
    parse_matrix,
)
from src.matrices.bruhat import BruhatForm, bruhat_decompose
from src.matrices.splitting import split_nonsingular, rank_normal_form
from src.matrices.sl_step import sl_step_factor, sl_step_predicates, expand_connectives
from src.matrices.sl_double import sl_double_factor, sl_double_predicates
from src.matrices.torus import TorusFactorization, regular_torus_factor
from src.matrices.covering import (
    SpecialLinearGroup,
    CoveringReport,
    class_covering_radius,
    class_c_representative,
    in_class_c,
    conjugacy_class,
    sampled_class_distances,
)
from src.matrices.generic import sl_generic_sequence

__all__ = [
    "FieldMatrix",
    "matmul",
    "matinv",
    "det",
    "transpose",
    "permutation_matrix",
    "signed_permutation_matrix",
    "permutation_of",
    "sl_order",
    "random_matrix",
    "random_invertible",
    "random_sl",
    "format_matrix",
    "parse_matrix",
    "BruhatForm",
    "bruhat_decompose",
    "split_nonsingular",
    "rank_normal_form",
    "sl_step_factor",
    "sl_step_predicates",
    "expand_connectives",
    "sl_double_factor",
    "sl_double_predicates",
    "TorusFactorization",
    "regular_torus_factor",
    "SpecialLinearGroup",
    "CoveringReport",
    "class_covering_radius",
    "class_c_representative",
    "in_class_c",
    "conjugacy_class",
    "sampled_class_distances",
    "sl_generic_sequence",
]
