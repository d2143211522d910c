"""
对称矩阵模 S ↦ A S Aᵀ（A ∈ SL(d, q)）的一致生成

把对称矩阵 S 写成 Σ A_i D_{tag_i} A_iᵀ，D₁、D₂ 为按特征固定的生成元：

| 特征 | D₁ | D₂ | 项数上界 |
|------|----|----|----------|
| p > 3 | diag(1,0,..,0) | diag(0,1,..,1) | 8 |
| p = 3 | diag(1,1,0,..,0) | diag(δ,1,..,1)，d 偶 δ=1 | 24 |
| p = 2 | diag(1,1,1,0,..,0) | χ_T，T 为坐标 3 起的完整三元组 | 36 |

特征 2 且 d = 2 时只有 D₁ = diag(1,0)，每个非零对角元各用一项。
特征 2 的交错矩阵先拆成三个非交错矩阵再分别对角化。

先用 SL 合同变换对角化，再对每个对角元做平方和分解，
每组项的 det 补偿放在该组图样为零的坐标上。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from src.core.exceptions import BoundExceeded, DimensionTooSmall, ValidationError
from src.core.logging_setup import get_logger
from src.fields.galois import GaloisField
from src.forms.squares import four_squares, two_squares
from src.forms.tables import Small, sl2_gf3_table, sl3_gf2_table
from src.matrices.matrix import FieldMatrix, format_matrix, permutation_matrix
from src.permutations.permutation import Permutation

logger = get_logger(__name__)

TAG_D1 = "D1"
TAG_D2 = "D2"

CASE_BOUNDS: Dict[str, int] = {"p>3": 8, "p=3": 24, "p=2": 36}

Term = Tuple[FieldMatrix, str]


def case_of(field: GaloisField) -> str:
    if field.p == 2:
        return "p=2"
    if field.p == 3:
        return "p=3"
    return "p>3"


@dataclass
class SymmetricMatrixCombination:
    """Σ A D_tag Aᵀ = target"""
    target: FieldMatrix
    terms: List[Term] = field(default_factory=list)
    generators: Dict[str, FieldMatrix] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.terms)

    def total(self) -> FieldMatrix:
        acc = FieldMatrix.zeros(self.target.field, self.target.d)
        for a, tag in self.terms:
            acc = acc + a * self.generators[tag] * a.transpose()
        return acc

    def is_valid(self) -> bool:
        return all(a.det() == 1 for a, _ in self.terms) and self.total() == self.target

    def to_json(self) -> Dict[str, object]:
        return {
            "target": format_matrix(self.target),
            "terms": [{"matrix": format_matrix(a), "generator": tag} for a, tag in self.terms],
        }


def is_symmetric(s: FieldMatrix) -> bool:
    return s == s.transpose()


def is_alternating(s: FieldMatrix) -> bool:
    return is_symmetric(s) and not np.diag(s.entries).any()


def _triple_coordinates(d: int) -> Tuple[List[int], List[int]]:
    """特征 2：坐标 3 起的完整三元组覆盖的坐标，及剩余坐标"""
    full = 3 * ((d - 3) // 3)
    return list(range(3, 3 + full)), list(range(3 + full, d))


def symmetric_generators(field: GaloisField, d: int) -> Dict[str, FieldMatrix]:
    if field.p > 3:
        return {
            TAG_D1: FieldMatrix.diagonal(field, [1] + [0] * (d - 1)),
            TAG_D2: FieldMatrix.diagonal(field, [0] + [1] * (d - 1)),
        }
    if field.p == 3:
        delta = 1 if d % 2 == 0 else 0
        return {
            TAG_D1: FieldMatrix.diagonal(field, [1, 1] + [0] * (d - 2)),
            TAG_D2: FieldMatrix.diagonal(field, [delta] + [1] * (d - 1)),
        }
    if d < 3:
        return {TAG_D1: FieldMatrix.diagonal(field, [1] + [0] * (d - 1))}
    gens = {TAG_D1: FieldMatrix.diagonal(field, [1, 1, 1] + [0] * (d - 3))}
    covered, _ = _triple_coordinates(d)
    if covered:
        gens[TAG_D2] = FieldMatrix.diagonal(field, [1 if i in covered else 0 for i in range(d)])
    return gens


# === 对角化 ===

def diagonalize_symmetric(s: FieldMatrix) -> Tuple[FieldMatrix, List[int]]:
    """
    返回 (P, λ)，P ∈ SL(d, q) 且 P S Pᵀ = diag(λ)

    主元取剩余坐标中最小的非零对角元；剩余块对角全零时：
    - 奇特征：把第 j 行加到第 i 行，对角元变为 2 s_ij
    - 特征 2：借用一个已处理的主元 k，把 (v_k, v_i, v_j) 换成三个两两正交、范数非零的向量

    Raises:
        ValidationError: 非对称，或特征 2 下非零交错矩阵
    """
    f, d = s.field, s.d
    if not is_symmetric(s):
        raise ValidationError("matrix is not symmetric")
    m = s
    t = FieldMatrix.identity(f, d)
    done: List[int] = []
    preferred: List[int] = []

    def congruence(e: FieldMatrix) -> None:
        nonlocal m, t
        m = e * m * e.transpose()
        t = e * t

    while True:
        rest = [i for i in range(d) if i not in done]
        diag = m.entries
        candidates = [i for i in preferred if i in rest] + rest
        pivot = next((i for i in candidates if diag[i, i]), None)
        if pivot is not None:
            a_inv = f.inv(int(diag[pivot, pivot]))
            for y in rest:
                c = int(m.entries[y, pivot])
                if y != pivot and c:
                    congruence(FieldMatrix.elementary(f, d, y, pivot, f.neg(f.mul(c, a_inv))))
            done.append(pivot)
            continue

        pair = next(((i, j) for i in rest for j in rest if i < j and diag[i, j]), None)
        if pair is None:
            break
        i, j = pair
        if f.p != 2:
            congruence(FieldMatrix.elementary(f, d, i, j, 1))
            continue

        k0 = next((k for k in done if diag[k, k]), None)
        if k0 is None:
            raise ValidationError("alternating matrix is not congruent to a diagonal matrix")
        r = f.div(int(diag[k0, k0]), int(diag[i, j]))
        rows = np.eye(d, dtype=np.int64)
        rows[k0, i] = r
        rows[i, k0] = rows[i, j] = 1
        rows[i, i] = 0
        rows[j, k0] = 1
        rows[j, i] = r
        congruence(FieldMatrix(f, rows))
        done.remove(k0)
        preferred = [k0, i, j]

    delta = t.det()
    congruence(FieldMatrix.diagonal(f, [f.inv(delta)] + [1] * (d - 1)))
    return t, [int(m.entries[i, i]) for i in range(d)]


def three_way_split(s: FieldMatrix) -> Tuple[FieldMatrix, FieldMatrix, FieldMatrix]:
    """特征 2：S = B₁ + B₂ + B₃，三者都不是交错矩阵"""
    f, d = s.field, s.d
    if not is_symmetric(s):
        raise ValidationError("matrix is not symmetric")
    if d < 2:
        raise DimensionTooSmall(details={"dimension": d, "minimum": 2})
    e00 = FieldMatrix.diagonal(f, [1] + [0] * (d - 1))
    if not is_alternating(s):
        return e00, e00, s
    e11 = FieldMatrix.diagonal(f, [0, 1] + [0] * (d - 2))
    return e00, e11, s + e00 + e11


# === 各特征的对角项 ===

def _scaling(f: GaloisField, d: int, values: Dict[int, int], z: int) -> FieldMatrix:
    """values 所在坐标取给定值，z 处取其积的逆，其余为 1"""
    diag = [1] * d
    prod = 1
    for i, v in values.items():
        diag[i] = v
        prod = f.mul(prod, v)
    diag[z] = f.inv(prod)
    return FieldMatrix.diagonal(f, diag)


def _embed(f: GaloisField, d: int, blocks: Sequence[Tuple[int, Small]]) -> FieldMatrix:
    arr = np.eye(d, dtype=np.int64)
    for start, small in blocks:
        n = len(small)
        arr[start:start + n, start:start + n] = np.array(small, dtype=np.int64)
    return FieldMatrix(f, arr)


def _least_outside(d: int, used: Set[int]) -> int:
    return next(i for i in range(d) if i not in used)


def _terms_large(f: GaloisField, d: int, lam: List[int]) -> List[Term]:
    betas = [four_squares(f, x) for x in lam]
    terms: List[Term] = []
    for j in range(4):
        col = [b[j] for b in betas]
        terms.append((_scaling(f, d, {0: col[0]}, 1), TAG_D1))
        terms.append((_scaling(f, d, {i: col[i] for i in range(1, d)}, 0), TAG_D2))
    return terms


def _terms_three(f: GaloisField, d: int, lam: List[int]) -> List[Term]:
    table = sl2_gf3_table()
    split = [two_squares(f, x) for x in lam]
    start = 1 if d % 2 else 0
    blocks = [(b, b + 1) for b in range(start, d, 2)]
    terms: List[Term] = []
    for values in ([a for a, _ in split], [b for _, b in split]):
        support = {i for i, v in enumerate(values) if v}
        if 0 in support:
            r = _scaling(f, d, {0: values[0]}, 1)
            terms += [(r * _embed(f, d, [(0, a)]), TAG_D1) for a in table.lookup((1, 0))]
        rest = support - {0}
        if rest:
            r = _scaling(f, d, {i: values[i] for i in rest}, 0)
            per_block = [
                (u, table.lookup((1 if u in rest else 0, 1 if v in rest else 0))) for u, v in blocks
            ]
            for k in range(table.terms):
                c = _embed(f, d, [(u, mats[k]) for u, mats in per_block])
                terms.append((r * c, TAG_D2))
    return terms


def _placing(f: GaloisField, d: int, triple: Tuple[int, int, int]) -> FieldMatrix:
    """把坐标 0,1,2 送到 triple 的置换矩阵"""
    others = [i for i in range(d) if i not in triple]
    return permutation_matrix(Permutation(list(triple) + others), f)


def _terms_two(f: GaloisField, d: int, lam: List[int]) -> List[Term]:
    table = sl3_gf2_table()
    alphas = [f.sqrt_char2(x) for x in lam]
    support = {i for i, x in enumerate(lam) if x}
    covered, leftovers = _triple_coordinates(d)

    k_a = sorted(support & {0, 1, 2})
    k_b = sorted(support & set(leftovers))
    triple_b = tuple(sorted(leftovers + [0, 1, 2][:3 - len(leftovers)])) if leftovers else (0, 1, 2)
    if d == 3 and len(k_a) == 3:
        k_a, k_b = [0, 1], [2]

    terms: List[Term] = []
    for triple, group in (((0, 1, 2), k_a), (triple_b, k_b)):
        if not group:
            continue
        bits = tuple(1 if t in group else 0 for t in triple)
        r = _scaling(f, d, {i: alphas[i] for i in group}, _least_outside(d, set(group)))
        p = _placing(f, d, triple)
        terms += [(r * p * _embed(f, d, [(0, a)]), TAG_D1) for a in table.lookup(bits)]

    k_c = support & set(covered)
    if k_c:
        r = _scaling(f, d, {i: alphas[i] for i in k_c}, 0)
        per_block = []
        for b in range(3, 3 + len(covered), 3):
            bits = tuple(1 if b + j in k_c else 0 for j in range(3))
            per_block.append((b, table.lookup(bits)))
        for k in range(table.terms):
            terms.append((r * _embed(f, d, [(b, mats[k]) for b, mats in per_block]), TAG_D2))
    return terms


def _terms_plane(f: GaloisField, lam: List[int]) -> List[Term]:
    """特征 2、d = 2：λ_i = α² 对应 A e₀ = α e_i，A ∈ SL(2, q)"""
    terms: List[Term] = []
    for i, x in enumerate(lam):
        if not x:
            continue
        a = f.sqrt_char2(x)
        rows = [[a, 0], [0, f.inv(a)]] if i == 0 else [[0, f.inv(a)], [a, 0]]
        terms.append((FieldMatrix(f, rows), TAG_D1))
    return terms


def _diagonal_terms(f: GaloisField, d: int, lam: List[int]) -> List[Term]:
    if f.p > 3:
        return _terms_large(f, d, lam)
    if f.p == 3:
        return _terms_three(f, d, lam)
    if d < 3:
        return _terms_plane(f, lam)
    return _terms_two(f, d, lam)


def symmetric_module_factor(s: FieldMatrix) -> SymmetricMatrixCombination:
    """
    对称矩阵写成生成元 D₁、D₂ 在 SL(d, q) 作用下的像之和

    Raises:
        DimensionTooSmall: d < 2
        ValidationError: s 不对称
        BoundExceeded: 项数超过 CASE_BOUNDS（不应发生）
    """
    f, d = s.field, s.d
    if d < 2:
        raise DimensionTooSmall(details={"dimension": d, "minimum": 2, "p": f.p})
    if not is_symmetric(s):
        raise ValidationError("matrix is not symmetric")

    gens = symmetric_generators(f, d)
    combo = SymmetricMatrixCombination(target=s, generators=gens)
    if not s.entries.any():
        return combo
    identity = FieldMatrix.identity(f, d)
    for tag, g in gens.items():
        if s == g:
            combo.terms = [(identity, tag)]
            return combo

    pieces = three_way_split(s) if f.p == 2 and is_alternating(s) else (s,)
    for piece in pieces:
        p, lam = diagonalize_symmetric(piece)
        p_inv = p.inverse()
        combo.terms += [(p_inv * a, tag) for a, tag in _diagonal_terms(f, d, lam)]

    bound = CASE_BOUNDS[case_of(f)]
    if len(combo) > bound:
        raise BoundExceeded(details={"terms": len(combo), "bound": bound, "case": case_of(f)})
    logger.debug(f"对称矩阵分解: {len(combo)} 项 ({case_of(f)})")
    return combo


__all__ = [
    "SymmetricMatrixCombination",
    "symmetric_module_factor",
    "symmetric_generators",
    "diagonalize_symmetric",
    "three_way_split",
    "is_symmetric",
    "is_alternating",
    "case_of",
    "CASE_BOUNDS",
    "TAG_D1",
    "TAG_D2",
]
