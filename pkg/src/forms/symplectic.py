"""
Sp(2d, q) 中的环面字与幺幂字

基为 (e_1..e_d, f_1..f_d)，Gram = [[0, I], [-I, 0]]。
- X(t) = [[I, S(t)], [0, I]]，Y(t) = [[I, 0], [S(t), I]]，S(t) = t·E₁₁
- X(λ) Y(-λ⁻¹) X(λ) X(-1) Y(1) X(-1) = diag(D_λ, D_λ⁻¹)，D_λ = diag(λ, 1, .., 1)
"""

from typing import Dict, List, Tuple

import numpy as np

from src.core.exceptions import ValidationError, ZeroLambda
from src.fields.galois import GaloisField, field_of_order
from src.forms.spaces import FormSpace, is_isometry, make_space
from src.forms.symmetric import TAG_D1, TAG_D2, symmetric_generators, symmetric_module_factor
from src.matrices.matrix import FieldMatrix
from src.permutations.witness import FactorizationWitness, Predicate

TAG_X = "X"
TAG_Y = "Y"
TAG_LEVI = "G"


def _corner(f: GaloisField, d: int, t: int) -> FieldMatrix:
    return FieldMatrix.diagonal(f, [t] + [0] * (d - 1))


def sp_upper(s: FieldMatrix) -> FieldMatrix:
    """[[I, S], [0, I]]"""
    d = s.d
    arr = np.eye(2 * d, dtype=np.int64)
    arr[:d, d:] = s.entries
    return FieldMatrix(s.field, arr)


def sp_lower(s: FieldMatrix) -> FieldMatrix:
    """[[I, 0], [S, I]]"""
    d = s.d
    arr = np.eye(2 * d, dtype=np.int64)
    arr[d:, :d] = s.entries
    return FieldMatrix(s.field, arr)


def sp_levi(a: FieldMatrix) -> FieldMatrix:
    """diag(A, (A⁻¹)ᵀ)"""
    return FieldMatrix.block_diagonal([a, a.inverse().transpose()])


def x_letter(f: GaloisField, d: int, t: int) -> FieldMatrix:
    return sp_upper(_corner(f, d, t))


def y_letter(f: GaloisField, d: int, t: int) -> FieldMatrix:
    return sp_lower(_corner(f, d, t))


def _blocks(a: FieldMatrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    d = a.d // 2
    e = a.entries
    return e[:d, :d], e[:d, d:], e[d:, :d], e[d:, d:]


def in_upper_unipotent(a: FieldMatrix) -> bool:
    """[[P, PS], [0, P⁻ᵀ]]，P 严格上三角幺幂，S 对称"""
    d = a.d // 2
    p, ps, zero, _ = _blocks(a)
    if zero.any():
        return False
    pm = FieldMatrix(a.field, p)
    if not (pm.is_upper_triangular() and all(int(p[i, i]) == 1 for i in range(d))):
        return False
    s = pm.inverse() * FieldMatrix(a.field, ps)
    return s == s.transpose() and a == sp_levi(pm) * sp_upper(s)


def in_lower_unipotent(a: FieldMatrix) -> bool:
    """[[Q, 0], [SQ, Q⁻ᵀ]]，Q 严格下三角幺幂，S 对称"""
    d = a.d // 2
    q, zero, sq, _ = _blocks(a)
    if zero.any():
        return False
    qm = FieldMatrix(a.field, q)
    if not (qm.transpose().is_upper_triangular() and all(int(q[i, i]) == 1 for i in range(d))):
        return False
    s = FieldMatrix(a.field, sq) * qm.inverse()
    return s == s.transpose() and a == sp_lower(s) * sp_levi(qm)


def sp_predicates(space: FormSpace) -> Dict[str, Predicate]:
    return {
        TAG_X: lambda a: in_upper_unipotent(a) and is_isometry(space, a),
        TAG_Y: lambda a: in_lower_unipotent(a) and is_isometry(space, a),
    }


def sp_borel_torus_word(lam: int, d: int, q: int) -> FactorizationWitness:
    """
    diag(D_λ, D_λ⁻¹) = X(λ) Y(-λ⁻¹) X(λ) X(-1) Y(1) X(-1)

    Raises:
        ZeroLambda: λ = 0
    """
    f = field_of_order(q)
    lam = int(lam)
    if lam == 0:
        raise ZeroLambda(details={"q": q})
    if d < 1:
        raise ValidationError("need at least one hyperbolic pair", details={"d": d})
    minus_one = f.neg(1)
    target = FieldMatrix.diagonal(f, [lam] + [1] * (d - 1) + [f.inv(lam)] + [1] * (d - 1))
    pairs = [
        (x_letter(f, d, lam), TAG_X),
        (y_letter(f, d, f.neg(f.inv(lam))), TAG_Y),
        (x_letter(f, d, lam), TAG_X),
        (x_letter(f, d, minus_one), TAG_X),
        (y_letter(f, d, 1), TAG_Y),
        (x_letter(f, d, minus_one), TAG_X),
    ]
    return FactorizationWitness.from_pairs(target, pairs)


def sp_unipotent_word(s: FieldMatrix) -> FactorizationWitness:
    """
    [[I, S], [0, I]] 写成 Levi 元素与两个固定 X(D₁)、X(D₂) 的共轭之积

    diag(A, A⁻ᵀ) · X(D) · diag(A, A⁻ᵀ)⁻¹ = X(A D Aᵀ)
    """
    combo = symmetric_module_factor(s)
    fixed = {tag: sp_upper(g) for tag, g in combo.generators.items()}
    pairs = []
    for a, tag in combo.terms:
        levi = sp_levi(a)
        pairs += [(levi, TAG_LEVI), (fixed[tag], tag), (levi.inverse(), TAG_LEVI)]
    return FactorizationWitness.from_pairs(sp_upper(s), pairs)


def unipotent_predicates(f: GaloisField, d: int) -> Dict[str, Predicate]:
    def levi(a: FieldMatrix) -> bool:
        top, corner, bottom_left, _ = _blocks(a)
        if corner.any() or bottom_left.any():
            return False
        block = FieldMatrix(a.field, top)
        return block.det() == 1 and a == sp_levi(block)

    checks: Dict[str, Predicate] = {TAG_LEVI: levi}
    for tag, g in symmetric_generators(f, d).items():
        checks[tag] = (lambda fixed: (lambda a: a == fixed))(sp_upper(g))
    return checks


def sl2_triangular_word(a: FieldMatrix) -> List[Tuple[FieldMatrix, str]]:
    """
    SL(2, q) 元素写成上 / 下单位三角矩阵之积

    c ≠ 0 时 a = X((a-1)/c) · Y(c) · X((d-1)/c)；c = 0 时先左乘 Y(1)。
    """
    f = a.field
    if a.d != 2 or a.det() != 1:
        raise ValidationError("expected an element of SL(2, q)")

    def upper(t: int) -> FieldMatrix:
        return FieldMatrix(f, [[1, t], [0, 1]])

    def lower(t: int) -> FieldMatrix:
        return FieldMatrix(f, [[1, 0], [t, 1]])

    prefix: List[Tuple[FieldMatrix, str]] = []
    if int(a.entries[1, 0]) == 0:
        prefix = [(lower(f.neg(1)), TAG_Y)]
        a = lower(1) * a
    x, c, y = int(a.entries[0, 0]), int(a.entries[1, 0]), int(a.entries[1, 1])
    c_inv = f.inv(c)
    return prefix + [
        (upper(f.mul(f.sub(x, 1), c_inv)), TAG_X),
        (lower(c), TAG_Y),
        (upper(f.mul(f.sub(y, 1), c_inv)), TAG_X),
    ]


def symplectic_space(d: int, q: int) -> FormSpace:
    return make_space("symplectic", d, q)


__all__ = [
    "sp_borel_torus_word",
    "sp_unipotent_word",
    "sp_predicates",
    "unipotent_predicates",
    "sl2_triangular_word",
    "sp_upper",
    "sp_lower",
    "sp_levi",
    "x_letter",
    "y_letter",
    "in_upper_unipotent",
    "in_lower_unipotent",
    "symplectic_space",
    "TAG_X",
    "TAG_Y",
    "TAG_LEVI",
    "TAG_D1",
    "TAG_D2",
]
