"""
形式空间模块

辛 / 酉 / 正交空间的等距判定，以及 Sp、SU、Ω 生成过程所用的逐群恒等式。
"""

from src.forms.spaces import (
    KINDS,
    FormSpace,
    make_space,
    su3_space,
    parse_space,
    form_value,
    quadratic_value,
    is_isometry,
    weyl_generators,
    space_weyl_generators,
)
from src.forms.squares import four_squares, two_squares
from src.forms.symmetric import (
    CASE_BOUNDS,
    SymmetricMatrixCombination,
    symmetric_module_factor,
    symmetric_generators,
    diagonalize_symmetric,
    three_way_split,
)
from src.forms.symplectic import sp_borel_torus_word, sp_unipotent_word, sp_predicates, sl2_triangular_word
from src.forms.unitary import su3_torus_factor, su3_diagonal_word, su3_predicates, lambda_split, in_l
from src.forms.even_weight import even_weight_decompose, permute_vector, standard_half_vector
from src.forms.orthogonal import pair_span_decompose, vector_split, sl_transporter

__all__ = [
    "KINDS",
    "FormSpace",
    "make_space",
    "su3_space",
    "parse_space",
    "form_value",
    "quadratic_value",
    "is_isometry",
    "weyl_generators",
    "space_weyl_generators",
    "four_squares",
    "two_squares",
    "CASE_BOUNDS",
    "SymmetricMatrixCombination",
    "symmetric_module_factor",
    "symmetric_generators",
    "diagonalize_symmetric",
    "three_way_split",
    "sp_borel_torus_word",
    "sp_unipotent_word",
    "sp_predicates",
    "sl2_triangular_word",
    "su3_torus_factor",
    "su3_diagonal_word",
    "su3_predicates",
    "lambda_split",
    "in_l",
    "even_weight_decompose",
    "permute_vector",
    "standard_half_vector",
    "pair_span_decompose",
    "vector_split",
    "sl_transporter",
]
