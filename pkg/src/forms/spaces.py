"""
形式空间与等距判定

坐标约定（d 个双曲对）：
- e_1..e_d 对应坐标 0..d-1，f_1..f_d 对应坐标 d..2d-1；
- quadratic-odd 追加 w，quadratic-minus 追加 w、z；
- hermitian 在 GF(q²) 上取 (x, y) = xᵀ G ȳ。

二次型用上三角矩阵 U 表示：Q(x) = xᵀ U x，相伴双线性型为 U + Uᵀ。
正交情形只检查保形与 det = 1，不判定 Ω 成员（Dickson 不变量 / 旋量范数）。
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import DimensionMismatch, FieldMismatch, ParseError, ValidationError
from src.fields.galois import FieldElement, GaloisField, field_of_order, split_prime_power, make_field
from src.matrices.matrix import FieldMatrix, permutation_matrix
from src.permutations.permutation import Permutation

KINDS = ("symplectic", "hermitian", "quadratic-plus", "quadratic-minus", "quadratic-odd")


def anisotropic_constant(field: GaloisField) -> int:
    """最小的 ν，使 x² + x + ν 在 GF(q) 中无根"""
    squares_plus = {field.add(field.mul(x, x), x) for x in field.elements()}
    return next(nu for nu in field.elements() if field.neg(nu) not in squares_plus)


def unitary_epsilon(field: GaloisField) -> int:
    """最小的 ε，使 ε ε̄ = -1"""
    target = field.neg(1)
    return next(e for e in field.nonzero() if field.mul(e, field.conjugate(e)) == target)


def skew_unit(field: GaloisField) -> int:
    """最小的非零 ε，使 ε̄ = -ε（特征 2 时为 1）"""
    return next(e for e in field.nonzero() if field.conjugate(e) == field.neg(e))


@dataclass(frozen=True)
class FormSpace:
    """带固定基的形式空间"""
    kind: str
    field: GaloisField
    d: int
    gram: FieldMatrix
    quadratic: Optional[FieldMatrix] = None
    labels: Tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return self.gram.d

    @property
    def is_hermitian(self) -> bool:
        return self.kind == "hermitian"

    @property
    def is_quadratic(self) -> bool:
        return self.quadratic is not None

    @classmethod
    def make(cls, kind: str, d: int, q: int) -> "FormSpace":
        return make_space(kind, d, q)

    def describe(self) -> str:
        base = self.field.q if not self.is_hermitian else int(round(self.field.q ** 0.5))
        return f"{self.kind},{self.d},{base}"


def _hyperbolic_labels(d: int) -> List[str]:
    return [f"e{i}" for i in range(1, d + 1)] + [f"f{i}" for i in range(1, d + 1)]


def make_space(kind: str, d: int, q: int) -> FormSpace:
    """
    按种类构造标准空间

    Raises:
        ValidationError: 未知种类或 d < 1
    """
    if kind not in KINDS:
        raise ValidationError(f"unknown form kind: {kind}", details={"kinds": list(KINDS)})
    if d < 1:
        raise ValidationError("need at least one hyperbolic pair", details={"d": d})

    if kind == "hermitian":
        p, a = split_prime_power(q)
        field = make_field(p, 2 * a)
    else:
        field = field_of_order(q)
    n = 2 * d
    one, minus = 1, field.neg(1)
    labels = _hyperbolic_labels(d)

    if kind in ("symplectic", "hermitian"):
        gram = np.zeros((n, n), dtype=np.int64)
        for i in range(d):
            gram[i, d + i] = one
            gram[d + i, i] = minus if kind == "symplectic" else one
        return FormSpace(kind, field, d, FieldMatrix(field, gram), None, tuple(labels))

    extra = {"quadratic-plus": 0, "quadratic-odd": 1, "quadratic-minus": 2}[kind]
    size = n + extra
    upper = np.zeros((size, size), dtype=np.int64)
    for i in range(d):
        upper[i, d + i] = one
    if kind == "quadratic-odd":
        upper[n, n] = one
        labels.append("w")
    elif kind == "quadratic-minus":
        upper[n, n] = one
        upper[n, n + 1] = one
        upper[n + 1, n + 1] = anisotropic_constant(field)
        labels += ["w", "z"]
    u = FieldMatrix(field, upper)
    return FormSpace(kind, field, d, u + u.transpose(), u, tuple(labels))


def su3_space(q: int) -> FormSpace:
    """GF(q²) 上的三维酉空间，基 (e, w, f)，Gram = antidiag(1, 1, 1)"""
    p, a = split_prime_power(q)
    field = make_field(p, 2 * a)
    gram = FieldMatrix(field, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    return FormSpace("hermitian", field, 1, gram, None, ("e", "w", "f"))


def parse_space(text: str) -> FormSpace:
    """`kind,d,q`"""
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
        raise ParseError(f"bad space descriptor: {text!r}", details={"expected": "kind,d,q"})
    return make_space(parts[0], int(parts[1]), int(parts[2]))


def _conjugate_matrix(a: FieldMatrix) -> FieldMatrix:
    return a.map_entries(a.field.conjugate)


def _check(space: FormSpace, size: int) -> None:
    if size != space.dim:
        raise DimensionMismatch(details={"space": space.dim, "given": size})


def form_value(space: FormSpace, u: Sequence[int], v: Sequence[int]) -> FieldElement:
    """(u, v)；hermitian 时对第二个参数取共轭"""
    _check(space, len(u))
    _check(space, len(v))
    f = space.field
    if space.is_hermitian:
        v = [f.conjugate(int(x)) for x in v]
    gv = space.gram.apply(v)
    total = 0
    for x, y in zip(u, gv):
        total = f.add(total, f.mul(int(x), y))
    return f.element(total)


def quadratic_value(space: FormSpace, u: Sequence[int]) -> FieldElement:
    if not space.is_quadratic:
        raise ValidationError(f"{space.kind} space has no quadratic form")
    _check(space, len(u))
    f = space.field
    uu = space.quadratic.apply(u)
    total = 0
    for x, y in zip(u, uu):
        total = f.add(total, f.mul(int(x), y))
    return f.element(total)


def is_isometry(space: FormSpace, a: FieldMatrix) -> bool:
    """a 保持形式（二次型情形保持 Q）且 det(a) = 1"""
    _check(space, a.d)
    if a.field != space.field:
        raise FieldMismatch(details={"space": repr(space.field), "matrix": repr(a.field)})
    if space.is_quadratic:
        m = a.transpose() * space.quadratic * a
        u = space.quadratic
        same_diagonal = np.array_equal(np.diag(m.entries), np.diag(u.entries))
        preserved = same_diagonal and (m + m.transpose()) == space.gram
    elif space.is_hermitian:
        preserved = a.transpose() * space.gram * _conjugate_matrix(a) == space.gram
    else:
        preserved = a.transpose() * space.gram * a == space.gram
    return preserved and a.det() == 1


def _pair_swap(d: int, i: int, size: int) -> Permutation:
    """(e_i e_{i+1})(f_i f_{i+1})，0 起始"""
    return Permutation.from_cycles([(i, i + 1), (d + i, d + i + 1)], size)


def space_weyl_generators(space: FormSpace) -> List[FieldMatrix]:
    """
    w_1..w_{d-1} 为置换矩阵，最后一个生成元按种类确定：

    - symplectic: e_d ↦ -f_d，f_d ↦ e_d
    - hermitian: e_d ↦ ε f_d，f_d ↦ ε̄⁻¹ e_d，ε̄ = -ε
    - quadratic-odd: 交换 e_d、f_d 并令 w ↦ -w
    - quadratic-plus / minus: 同时交换 (e_{d-1}, f_{d-1}) 与 (e_d, f_d)
    """
    f, d, size = space.field, space.d, space.dim
    gens = [permutation_matrix(_pair_swap(d, i, size), f) for i in range(d - 1)]
    last = np.eye(size, dtype=np.int64)
    e_d, f_d = d - 1, 2 * d - 1

    if space.kind == "symplectic":
        last[e_d, e_d] = last[f_d, f_d] = 0
        last[f_d, e_d] = f.neg(1)
        last[e_d, f_d] = 1
    elif space.kind == "hermitian":
        eps = skew_unit(f)
        last[e_d, e_d] = last[f_d, f_d] = 0
        last[f_d, e_d] = eps
        last[e_d, f_d] = f.inv(f.conjugate(eps))
    elif space.kind == "quadratic-odd":
        last[e_d, e_d] = last[f_d, f_d] = 0
        last[f_d, e_d] = last[e_d, f_d] = 1
        last[2 * d, 2 * d] = f.neg(1)
    else:
        if d < 2:
            return gens
        for i in (d - 2, d - 1):
            last[i, i] = last[d + i, d + i] = 0
            last[d + i, i] = last[i, d + i] = 1
    gens.append(FieldMatrix(f, last))
    return gens


def weyl_generators(kind: str, d: int, q: int) -> List[FieldMatrix]:
    return space_weyl_generators(make_space(kind, d, q))


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
    "anisotropic_constant",
    "unitary_epsilon",
    "skew_unit",
]
