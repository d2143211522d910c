"""
SL(8d, q) 在 Γ = SL(E₀) × SL(E₁) 上的有限生成（E₀、E₁ 各 4d 维）

- Weyl 部分：w 为奇置换时先乘 Σ = P_(0 1)·diag(-1,..) 调整奇偶，偶置换交给 uni2；
- 对角部分：D = G_D · F(μ)，F(μ) = Π K_μ Π⁻¹；
- 幺幂部分：U = diag(U₁, U₂) · T(S)，S 的每个 2d×2d 块拆成两个可逆矩阵之和，
  每个可逆块 B 写成 diag(C, I) · T(J) · diag(C⁻¹, I)，J 为四个固定连接元之一。
"""

from typing import Dict, List, Tuple

import numpy as np

from src.core.exceptions import DimensionTooSmall, ValidationError
from src.core.logging_setup import get_logger
from src.fields.galois import GaloisField
from src.matrices.matrix import FieldMatrix, permutation_matrix, signed_permutation_matrix
from src.matrices.sl_step import merge_letters, weyl_reduction
from src.matrices.splitting import split_nonsingular
from src.permutations.permutation import Permutation
from src.permutations.uni1 import TAG_THETA
from src.permutations.uni2 import TAG_GAMMA, uni2_factor, uni2_theta
from src.permutations.witness import FactorizationWitness, Predicate

logger = get_logger(__name__)

TAG_PI = "Pi"
TAG_PI_INV = "Pi^-1"
TAG_J = ("J1", "J2", "J3", "J4")

Word = List[Tuple[FieldMatrix, str]]


def in_gamma_matrix(a: FieldMatrix) -> bool:
    """块对角且每块 det = 1"""
    n = a.d
    h = n // 2
    e = a.entries
    if e[:h, h:].any() or e[h:, :h].any():
        return False
    top = FieldMatrix(a.field, e[:h, :h])
    bottom = FieldMatrix(a.field, e[h:, h:])
    return top.det() == 1 and bottom.det() == 1


def upper_block(field: GaloisField, s: FieldMatrix) -> FieldMatrix:
    """T(S) = [[I, S], [0, I]]"""
    h = s.d
    arr = np.eye(2 * h, dtype=np.int64)
    arr[:h, h:] = s.entries
    return FieldMatrix(field, arr)


def connective_j(field: GaloisField, n: int, index: int) -> FieldMatrix:
    """
    T(J_i)，J_i 为 4d×4d 中某个 2d×2d 象限取 I 的矩阵

    J1 左上，J2 右下，J3 右上，J4 左下。
    """
    h = n // 2
    half = h // 2
    j = np.zeros((h, h), dtype=np.int64)
    rows, cols = {1: (0, 0), 2: (half, half), 3: (0, half), 4: (half, 0)}[index]
    j[rows:rows + half, cols:cols + half] = np.eye(half, dtype=np.int64)
    return upper_block(field, FieldMatrix(field, j))


def swap_matrix(field: GaloisField, n: int) -> FieldMatrix:
    """Π：交换 e_1 与 e_h，带符号使 det = 1"""
    h = n // 2
    return signed_permutation_matrix(Permutation.transposition(1, h, n), field, [1])


def sl_double_predicates(field: GaloisField, n: int) -> Dict[str, Predicate]:
    pi = swap_matrix(field, n)
    pi_inv = pi.inverse()
    theta = permutation_matrix(uni2_theta(n // 8), field)
    predicates: Dict[str, Predicate] = {
        TAG_GAMMA: in_gamma_matrix,
        TAG_THETA: lambda a: a == theta,
        TAG_PI: lambda a: a == pi,
        TAG_PI_INV: lambda a: a == pi_inv,
    }
    for i, tag in enumerate(TAG_J, start=1):
        predicates[tag] = (lambda fixed: (lambda a: a == fixed))(connective_j(field, n, i))
    return predicates


def _weyl_word(field: GaloisField, n: int):
    def build(w: Permutation) -> Word:
        out: Word = []
        if w.is_identity():
            return out
        if not w.is_even():
            sigma = Permutation.transposition(0, 1, n)
            out.append((signed_permutation_matrix(sigma, field, [0]), TAG_GAMMA))
            w = sigma * w
        for letter in uni2_factor(w, n // 8).letters:
            out.append((permutation_matrix(letter.element, field), letter.tag))
        return out

    return build


def _diagonal_word(field: GaloisField, lam: List[int]) -> Word:
    n = len(lam)
    h = n // 2
    mu = 1
    for x in lam[:h]:
        mu = field.mul(mu, x)
    if mu == 1:
        return [(FieldMatrix.diagonal(field, lam), TAG_GAMMA)]
    f_inv = [1] * n
    f_inv[0], f_inv[h] = field.inv(mu), mu
    g = [field.mul(x, y) for x, y in zip(lam, f_inv)]
    k = [1] * n
    k[0], k[1] = mu, field.inv(mu)
    pi = swap_matrix(field, n)
    return [
        (FieldMatrix.diagonal(field, g), TAG_GAMMA),
        (pi, TAG_PI),
        (FieldMatrix.diagonal(field, k), TAG_GAMMA),
        (pi.inverse(), TAG_PI_INV),
    ]


def _unipotent_word(u: FieldMatrix) -> Word:
    field, n = u.field, u.d
    h, half = n // 2, n // 4
    u1 = FieldMatrix(field, u.entries[:h, :h])
    u2 = FieldMatrix(field, u.entries[h:, h:])
    x = FieldMatrix(field, u.entries[:h, h:])
    s = u1.inverse() * x
    word: Word = [(FieldMatrix.block_diagonal([u1, u2]), TAG_GAMMA)]

    identity_h = FieldMatrix.identity(field, h)
    # (行, 列, 连接元编号, C 的构造方式)
    quadrants = [(0, 0, 1, False), (0, half, 3, False), (half, 0, 4, True), (half, half, 2, True)]
    for r0, c0, index, inverted in quadrants:
        block = FieldMatrix(field, s.entries[r0:r0 + half, c0:c0 + half])
        if not block.entries.any():
            continue
        for piece in split_nonsingular(block):
            piece_inv = piece.inverse()
            blocks = [piece_inv, piece] if inverted else [piece, piece_inv]
            c = FieldMatrix.block_diagonal(blocks)
            word += [
                (FieldMatrix.block_diagonal([c, identity_h]), TAG_GAMMA),
                (connective_j(field, n, index), TAG_J[index - 1]),
                (FieldMatrix.block_diagonal([c.inverse(), identity_h]), TAG_GAMMA),
            ]
    return word


def borel_gamma_word(b: FieldMatrix) -> Word:
    """上三角 det=1 矩阵写成 Γ 字母与连接元之积"""
    field, n = b.field, b.d
    lam = [int(b.entries[i, i]) for i in range(n)]
    D = FieldMatrix.diagonal(field, lam)
    return _diagonal_word(field, lam) + _unipotent_word(D.inverse() * b)


def sl_double_factor(phi: FieldMatrix) -> FactorizationWitness:
    """
    φ ∈ SL(8d, q) 写成 Γ 字母与固定连接元之积

    Raises:
        DimensionTooSmall: 维数不是 8 的正整数倍
    """
    field, n = phi.field, phi.d
    if n < 8 or n % 8:
        raise DimensionTooSmall(details={"dimension": n, "required": "positive multiple of 8"})
    if phi.det() != 1:
        raise ValidationError("matrix is not in SL", details={"det": phi.det()})

    if phi.is_identity():
        return FactorizationWitness(target=phi, letters=[])
    if in_gamma_matrix(phi):
        return FactorizationWitness.from_pairs(phi, [(phi, TAG_GAMMA)])

    w_letters, b1, b2 = weyl_reduction(phi, _weyl_word(field, n))
    word = borel_gamma_word(b1) + w_letters + borel_gamma_word(b2)
    return FactorizationWitness.from_pairs(phi, merge_letters(word, (TAG_GAMMA,)))


__all__ = [
    "sl_double_factor",
    "sl_double_predicates",
    "borel_gamma_word",
    "in_gamma_matrix",
    "connective_j",
    "swap_matrix",
    "upper_block",
    "TAG_J",
    "TAG_PI",
    "TAG_PI_INV",
]
