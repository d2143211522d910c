"""
向量对的 SL 拆分

- pair_span_decompose：(x, y) = A(a, b) + B(a, b)，A、B ∈ SL(d, q)，d ≥ 3
- vector_split：y = A₁x₀ + A₂x₀，A₁、A₂ ∈ SL(d, q)，d ≥ 2
"""

from itertools import product
from typing import List, Sequence, Tuple

from src.core.exceptions import DependentPair, DimensionMismatch, DimensionTooSmall, ValidationError
from src.fields.galois import GaloisField
from src.fields.linalg import rank
from src.matrices.matrix import FieldMatrix

Vector = List[int]


def _independent(f: GaloisField, vectors: Sequence[Sequence[int]]) -> bool:
    return rank(f, vectors) == len(vectors)


def _complete(f: GaloisField, vectors: Sequence[Sequence[int]], d: int) -> List[Vector]:
    """按 e_0, e_1, ... 顺序补全为一组基"""
    basis = [list(v) for v in vectors]
    for i in range(d):
        if len(basis) == d:
            break
        e = [1 if j == i else 0 for j in range(d)]
        if _independent(f, basis + [e]):
            basis.append(e)
    return basis


def _columns(f: GaloisField, vectors: Sequence[Sequence[int]]) -> FieldMatrix:
    d = len(vectors)
    return FieldMatrix(f, [[vectors[j][i] for j in range(d)] for i in range(d)])


def sl_transporter(f: GaloisField, sources: Sequence[Sequence[int]], images: Sequence[Sequence[int]]) -> FieldMatrix:
    """
    A ∈ SL(d, q)，A s_k = i_k

    两组向量都需线性无关且个数 < d，det 补偿在最后一个补全列上。
    """
    d = len(sources[0])
    if len(sources) >= d:
        raise DimensionTooSmall(details={"dimension": d, "vectors": len(sources)})
    if not _independent(f, sources) or not _independent(f, images):
        raise DependentPair(details={"sources": [list(s) for s in sources], "images": [list(i) for i in images]})
    m = _columns(f, _complete(f, sources, d))
    target = _complete(f, images, d)
    draft = _columns(f, target)
    factor = f.div(m.det(), draft.det())
    target[-1] = [f.mul(factor, x) for x in target[-1]]
    a = _columns(f, target) * m.inverse()
    return a


def _sub(f: GaloisField, x: Sequence[int], y: Sequence[int]) -> Vector:
    return [f.sub(int(a), int(b)) for a, b in zip(x, y)]


def pair_span_decompose(
    f: GaloisField,
    x: Sequence[int],
    y: Sequence[int],
    a: Sequence[int],
    b: Sequence[int],
) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    A·a + B·a = x，A·b + B·b = y

    按编码字典序扫描 (u, v)，要求 (u, v) 与 (x-u, y-v) 都线性无关，
    再令 A: (a, b) ↦ (u, v)，B: (a, b) ↦ (x-u, y-v)。

    Raises:
        DimensionTooSmall: d < 3
        DependentPair: a、b 线性相关
    """
    d = len(a)
    if any(len(v) != d for v in (x, y, b)):
        raise DimensionMismatch(details={"lengths": [len(v) for v in (x, y, a, b)]})
    if d < 3:
        raise DimensionTooSmall(details={"dimension": d, "minimum": 3})
    if not _independent(f, [a, b]):
        raise DependentPair(details={"a": list(a), "b": list(b)})

    vectors = [list(v) for v in product(range(f.q), repeat=d)]
    for u in vectors:
        if not any(u):
            continue
        rest_x = _sub(f, x, u)
        for v in vectors:
            if not _independent(f, [u, v]):
                continue
            rest_y = _sub(f, y, v)
            if _independent(f, [rest_x, rest_y]):
                return sl_transporter(f, [a, b], [u, v]), sl_transporter(f, [a, b], [rest_x, rest_y])
    raise DependentPair("no admissible split found", details={"x": list(x), "y": list(y)})


def vector_split(f: GaloisField, y: Sequence[int], x0: Sequence[int]) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    y = A₁x₀ + A₂x₀

    Raises:
        DimensionTooSmall: d < 2
        ValidationError: x₀ = 0
    """
    d = len(x0)
    if d < 2:
        raise DimensionTooSmall(details={"dimension": d, "minimum": 2})
    if not any(x0):
        raise ValidationError("x0 must be nonzero")
    for i in range(d):
        u = [1 if j == i else 0 for j in range(d)]
        rest = _sub(f, y, u)
        if any(rest):
            return sl_transporter(f, [x0], [u]), sl_transporter(f, [x0], [rest])
    raise ValidationError("no admissible split found")


__all__ = ["pair_span_decompose", "vector_split", "sl_transporter"]
