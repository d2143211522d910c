"""
SL(d+1, q) 在两个嵌入的 SL(d, q) 上的有限生成

S = 左上角嵌入（固定 e_d），T = 右下角嵌入（固定 e_0）。
φ = b1 · W · b2：W 由 Sym 版双陪集分解提升为 S 字母与连接元 Θ，
Borel 部分 b = D₁ D₂ R_S [X, Y] u_T。
"""

from typing import Dict, List, Tuple

from src.core.exceptions import DimensionTooSmall, ValidationError
from src.core.logging_setup import get_logger
from src.fields.galois import GaloisField
from src.matrices.bruhat import bruhat_decompose
from src.matrices.matrix import FieldMatrix, permutation_matrix, permutation_of, signed_permutation_matrix
from src.permutations.permutation import Permutation
from src.permutations.uni1 import weyl_double_coset
from src.permutations.witness import FactorizationWitness, Letter, Predicate

logger = get_logger(__name__)

TAG_S = "S"
TAG_T = "T"
TAG_THETA = "Theta"
TAG_PI = "Pi"
TAG_PI_INV = "Pi^-1"

Word = List[Tuple[FieldMatrix, str]]


def in_top_left(a: FieldMatrix) -> bool:
    """S：最后一行、最后一列为 e_d，且 det = 1"""
    n = a.d
    e = a.entries
    return (
        int(e[n - 1, n - 1]) == 1
        and not e[n - 1, : n - 1].any()
        and not e[: n - 1, n - 1].any()
        and a.det() == 1
    )


def in_bottom_right(a: FieldMatrix) -> bool:
    """T：首行、首列为 e_0，且 det = 1"""
    e = a.entries
    return int(e[0, 0]) == 1 and not e[0, 1:].any() and not e[1:, 0].any() and a.det() == 1


def theta_matrix(field: GaloisField, n: int) -> FieldMatrix:
    """(n-2 n-1) 的置换矩阵乘以 diag(1,..,1,-1)"""
    return signed_permutation_matrix(Permutation.transposition(n - 2, n - 1, n), field, [n - 1])


def shift_matrix(field: GaloisField, n: int) -> FieldMatrix:
    """Π: e_i ↦ e_{i+1}，e_{n-1} ↦ ±e_0，det = 1"""
    cycle = Permutation([(i + 1) % n for i in range(n)])
    negate = [n - 1] if (n - 1) % 2 else []
    return signed_permutation_matrix(cycle, field, negate)


def sl_step_predicates(field: GaloisField, n: int) -> Dict[str, Predicate]:
    theta = theta_matrix(field, n)
    pi = shift_matrix(field, n)
    pi_inv = pi.inverse()
    return {
        TAG_S: in_top_left,
        TAG_T: in_bottom_right,
        TAG_THETA: lambda a: a == theta,
        TAG_PI: lambda a: a == pi,
        TAG_PI_INV: lambda a: a == pi_inv,
    }


def _lift(perm: Permutation, field: GaloisField) -> FieldMatrix:
    """Sym(N-1) 元素提升到 S：P_ψ · diag(sgn ψ, 1, ...)"""
    negate = [] if perm.is_even() else [0]
    return signed_permutation_matrix(perm, field, negate)


def merge_letters(word: Word, mergeable: Tuple[str, ...]) -> Word:
    """合并相邻同标签字母，去掉单位元"""
    merged: Word = []
    for element, tag in word:
        if merged and tag in mergeable and merged[-1][1] == tag:
            merged[-1] = (merged[-1][0] * element, tag)
        else:
            merged.append((element, tag))
    return [(e, t) for e, t in merged if not (t in mergeable and e.is_identity())]


def borel_word(b: FieldMatrix) -> Word:
    """上三角 det=1 矩阵写成 S、T 字母之积"""
    field, n = b.field, b.d
    lam = [int(b.entries[i, i]) for i in range(n)]
    d1 = [lam[0], field.inv(lam[0])] + [1] * (n - 2)
    d2 = [1, field.mul(lam[0], lam[1])] + lam[2:]
    D = FieldMatrix.diagonal(field, lam)
    U = D.inverse() * b

    u_t = U.to_rows()
    u_t[0] = [1] + [0] * (n - 1)
    u_t = FieldMatrix(field, u_t)
    r = (U * u_t.inverse()).to_rows()[0]

    r_s = FieldMatrix.identity(field, n).to_rows()
    for j in range(1, n - 1):
        r_s[0][j] = r[j]
    word: Word = [
        (FieldMatrix.diagonal(field, d1), TAG_S),
        (FieldMatrix.diagonal(field, d2), TAG_T),
        (FieldMatrix(field, r_s), TAG_S),
    ]
    corner = r[n - 1]
    if corner:
        x = FieldMatrix.elementary(field, n, 0, 1, 1)
        y = FieldMatrix.elementary(field, n, 1, n - 1, corner)
        word += [(x, TAG_S), (y, TAG_T), (x.inverse(), TAG_S), (y.inverse(), TAG_T)]
    word.append((u_t, TAG_T))
    return word


def weyl_reduction(a: FieldMatrix, weyl_word) -> Tuple[Word, FieldMatrix, FieldMatrix]:
    """
    Bruhat 分解后把 w 换成给定的 det=1 单项字母表

    Args:
        weyl_word: 置换 → [(单项矩阵, 标签)]，其积的底层置换为该置换

    Returns:
        (W 的字母表, b1', b2'')，满足 a = b1' · W · b2''，两侧 det = 1
    """
    field, n = a.field, a.d
    form = bruhat_decompose(a)
    w_perm = permutation_of(form.w)
    w_letters = weyl_word(w_perm)
    W = FieldMatrix.identity(field, n)
    for element, _ in w_letters:
        W = W * element
    H = W.inverse() * form.w
    b2 = H * form.b2
    delta = form.b1.det()
    shift = [field.inv(delta)] + [1] * (n - 1)
    b1 = form.b1 * FieldMatrix.diagonal(field, shift)
    correction = W.inverse() * FieldMatrix.diagonal(field, [delta] + [1] * (n - 1)) * W
    return w_letters, b1, correction * b2


def sl_step_factor(phi: FieldMatrix) -> FactorizationWitness:
    """
    φ ∈ SL(d+1, q) 写成 S、T 字母与连接元 Θ 之积

    Raises:
        DimensionTooSmall: d < 2
    """
    field, n = phi.field, phi.d
    if n < 3:
        raise DimensionTooSmall(details={"dimension": n, "minimum": 3})
    if phi.det() != 1:
        raise ValidationError("matrix is not in SL", details={"det": phi.det()})

    if phi.is_identity():
        return FactorizationWitness(target=phi, letters=[])
    if in_top_left(phi):
        return FactorizationWitness.from_pairs(phi, [(phi, TAG_S)])
    if in_bottom_right(phi):
        return FactorizationWitness.from_pairs(phi, [(phi, TAG_T)])

    theta = theta_matrix(field, n)

    def weyl_word(w: Permutation) -> Word:
        out: Word = []
        for perm, tag in weyl_double_coset(w):
            out.append((theta, TAG_THETA) if tag == "theta" else (_lift(perm, field), TAG_S))
        return out

    w_letters, b1, b2 = weyl_reduction(phi, weyl_word)
    word = borel_word(b1) + w_letters + borel_word(b2)
    return FactorizationWitness.from_pairs(phi, merge_letters(word, (TAG_S, TAG_T)))


def expand_connectives(witness: FactorizationWitness) -> FactorizationWitness:
    """把每个 T 字母改写为 Π · S · Π⁻¹"""
    target = witness.target
    pi = shift_matrix(target.field, target.d)
    pi_inv = pi.inverse()
    letters: List[Letter] = []
    for letter in witness.letters:
        if letter.tag == TAG_T:
            letters += [
                Letter(pi, TAG_PI),
                Letter(pi_inv * letter.element * pi, TAG_S),
                Letter(pi_inv, TAG_PI_INV),
            ]
        else:
            letters.append(letter)
    return FactorizationWitness(target=target, letters=letters)


__all__ = [
    "sl_step_factor",
    "sl_step_predicates",
    "expand_connectives",
    "borel_word",
    "merge_letters",
    "weyl_reduction",
    "theta_matrix",
    "shift_matrix",
    "in_top_left",
    "in_bottom_right",
    "TAG_S",
    "TAG_T",
    "TAG_THETA",
    "TAG_PI",
    "TAG_PI_INV",
]
