"""
SU(3, q) 环面恒等式

基 (e, w, f)，Gram = antidiag(1, 1, 1)，形式 (x, y) = xᵀ G ȳ。
固定 ε ε̄ = -1；当 λ⁻¹ + λ̄⁻¹ = t t̄ 时

    A₁ B A₂ = [[0, 0, λ], [0, -λ⁻¹λ̄, 0], [λ̄⁻¹, 0, 0]]

A₁、A₂ 上单位三角，B 下单位三角，三者都在 SU(3) 中。
范数映射满射，因此每个非零 λ 都满足条件；lambda_split 仍按扫描返回最小对。
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from src.core.exceptions import NotInL, ZeroLambda
from src.fields.galois import GaloisField
from src.forms.spaces import FormSpace, is_isometry, su3_space, unitary_epsilon
from src.matrices.matrix import FieldMatrix
from src.permutations.witness import FactorizationWitness, Predicate

TAG_U = "U"
TAG_V = "V"


@dataclass(frozen=True)
class Su3Torus:
    a1: FieldMatrix
    b: FieldMatrix
    a2: FieldMatrix
    t: int
    eps: int

    def product(self) -> FieldMatrix:
        return self.a1 * self.b * self.a2


def _norm(f: GaloisField, x: int) -> int:
    return f.mul(x, f.conjugate(x))


def l_witness(f: GaloisField, lam: int) -> Optional[int]:
    """最小的 t 使 λ⁻¹ + λ̄⁻¹ = t t̄，不存在时返回 None"""
    if lam == 0:
        raise ZeroLambda()
    target = f.add(f.inv(lam), f.inv(f.conjugate(lam)))
    return next((t for t in f.elements() if _norm(f, t) == target), None)


def in_l(f: GaloisField, lam: int) -> bool:
    return lam != 0 and l_witness(f, lam) is not None


def twisted_antidiagonal(f: GaloisField, lam: int) -> FieldMatrix:
    """[[0, 0, λ], [0, -λ⁻¹λ̄, 0], [λ̄⁻¹, 0, 0]]"""
    bar = f.conjugate(lam)
    middle = f.neg(f.mul(f.inv(lam), bar))
    return FieldMatrix(f, [[0, 0, lam], [0, middle, 0], [f.inv(bar), 0, 0]])


def su3_torus_factor(space: FormSpace, lam: int) -> Su3Torus:
    """
    Raises:
        ZeroLambda: λ = 0
        NotInL: 不存在 t
    """
    f = space.field
    lam = int(lam)
    t = l_witness(f, lam)
    if t is None:
        raise NotInL(details={"lambda": f.format_element(lam)})
    eps = unitary_epsilon(f)
    eps_inv = f.inv(eps)
    lam_bar = f.conjugate(lam)
    t_bar = f.conjugate(t)

    a1 = FieldMatrix(f, [
        [1, f.mul(eps_inv, f.mul(lam, t)), lam],
        [0, 1, f.mul(eps, f.mul(lam_bar, t_bar))],
        [0, 0, 1],
    ])
    a2 = FieldMatrix(f, [
        [1, f.mul(eps_inv, f.mul(lam_bar, t)), lam],
        [0, 1, f.mul(eps, f.mul(lam, t_bar))],
        [0, 0, 1],
    ])
    b = FieldMatrix(f, [
        [1, 0, 0],
        [f.neg(f.mul(eps, t_bar)), 1, 0],
        [f.inv(lam_bar), f.neg(f.mul(eps_inv, t)), 1],
    ])
    return Su3Torus(a1=a1, b=b, a2=a2, t=t, eps=eps)


def lambda_split(f: GaloisField, lam: int) -> Tuple[int, int]:
    """λ = λ₁ · λ̄₂⁻¹，λ₁、λ₂ ∈ L，按 λ₂ 编码扫描"""
    lam = int(lam)
    if lam == 0:
        raise ZeroLambda()
    for lam2 in f.nonzero():
        lam1 = f.mul(lam, f.conjugate(lam2))
        if in_l(f, lam1) and in_l(f, lam2):
            return lam1, lam2
    raise NotInL(details={"lambda": f.format_element(lam)})


def su3_diagonal(f: GaloisField, lam: int) -> FieldMatrix:
    """diag(λ, λ⁻¹λ̄, λ̄⁻¹)"""
    bar = f.conjugate(lam)
    return FieldMatrix.diagonal(f, [lam, f.mul(f.inv(lam), bar), f.inv(bar)])


def su3_diagonal_word(q: int, lam: int) -> FactorizationWitness:
    """diag(λ, λ⁻¹λ̄, λ̄⁻¹) 写成六个 U / V 字母"""
    space = su3_space(q)
    f = space.field
    lam1, lam2 = lambda_split(f, lam)
    pairs = []
    for mu in (lam1, lam2):
        torus = su3_torus_factor(space, mu)
        pairs += [(torus.a1, TAG_U), (torus.b, TAG_V), (torus.a2, TAG_U)]
    return FactorizationWitness.from_pairs(su3_diagonal(f, int(lam)), pairs)


def su3_predicates(space: FormSpace) -> Dict[str, Predicate]:
    def unitriangular(a: FieldMatrix) -> bool:
        return a.is_upper_triangular() and all(int(a.entries[i, i]) == 1 for i in range(a.d))

    return {
        TAG_U: lambda a: unitriangular(a) and is_isometry(space, a),
        TAG_V: lambda a: unitriangular(a.transpose()) and is_isometry(space, a),
    }


__all__ = [
    "Su3Torus",
    "su3_torus_factor",
    "su3_diagonal_word",
    "su3_diagonal",
    "su3_predicates",
    "lambda_split",
    "l_witness",
    "in_l",
    "twisted_antidiagonal",
    "TAG_U",
    "TAG_V",
]
