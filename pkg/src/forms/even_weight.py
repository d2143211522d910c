"""
偶重向量分解

v 为前 ⌊d/2⌋ 位为 1 的标准向量，偶重向量 u 写成 u = π(v) + φ(v)（Z₂ 上）：
supp(u) 的前一半记 A、后一半记 B，再从补集取 I 补足 ⌊d/2⌋ 位，
π 把前 ⌊d/2⌋ 个位置送到 A ∪ I，φ 送到 B ∪ I。
"""

from typing import List, Sequence, Tuple

from src.core.exceptions import OddWeight, ValidationError
from src.permutations.permutation import Permutation


def standard_half_vector(d: int) -> List[int]:
    t = d // 2
    return [1] * t + [0] * (d - t)


def permute_vector(perm: Permutation, v: Sequence[int]) -> List[int]:
    """π(v)_{π(i)} = v_i"""
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm(i)] = x
    return out


def _sending_front_to(d: int, t: int, front: List[int]) -> Permutation:
    back = [i for i in range(d) if i not in front]
    return Permutation(sorted(front) + back)


def even_weight_decompose(u: Sequence[int], d: int) -> Tuple[Permutation, Permutation]:
    """
    Raises:
        OddWeight: u 的重量为奇数
        ValidationError: d < 2 或长度不符
    """
    if d < 2:
        raise ValidationError("need d >= 2", details={"d": d})
    if len(u) != d or any(x not in (0, 1) for x in u):
        raise ValidationError("expected a binary vector of length d", details={"d": d, "u": list(u)})
    support = [i for i, x in enumerate(u) if x]
    if len(support) % 2:
        raise OddWeight(details={"weight": len(support)})

    t = d // 2
    half = len(support) // 2
    a, b = support[:half], support[half:]
    filler = [i for i in range(d) if i not in support][:t - half]
    return _sending_front_to(d, t, a + filler), _sending_front_to(d, t, b + filler)


__all__ = ["even_weight_decompose", "standard_half_vector", "permute_vector"]
