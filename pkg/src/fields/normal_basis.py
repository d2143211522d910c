"""
正规基

GF(q^d) 在 GF(q) 上的正规基 {τ, τ^q, ..., τ^{q^{d-1}}}：
- normal_basis_generator: 按编码升序扫描的最小 τ
- subfield_embedding: GF(q) → GF(q^d) 的嵌入
- normal_basis_coordinates: 元素在正规基下的 GF(q) 坐标
"""

from typing import List, Sequence

from src.core.exceptions import FieldMismatch, ValidationError
from src.core.logging_setup import get_logger
from src.fields.galois import FieldElement, GaloisField, make_field, split_prime_power
from src.fields.linalg import rank, solve

logger = get_logger(__name__)


def frobenius_orbit(tau: FieldElement, q: int, d: int) -> List[FieldElement]:
    """[τ, τ^q, ..., τ^{q^{d-1}}]"""
    _, a = split_prime_power(q)
    return [tau.frobenius(a * j) for j in range(d)]


def frobenius_orbit_rank(tau: FieldElement, q: int, d: int) -> int:
    """
    轨道在 GF(q) 上的秩

    Moore 矩阵 [τ^{q^{i+j}}] 在大域上的秩即为轨道的 GF(q)-秩。
    """
    field = tau.field
    orbit = frobenius_orbit(tau, q, d)
    moore = [[orbit[(i + j) % d].value for j in range(d)] for i in range(d)]
    return rank(field, moore)


def normal_basis_generator(q: int, d: int) -> FieldElement:
    """GF(q^d) 中生成正规基的最小 τ（按系数编码升序）"""
    p, a = split_prime_power(q)
    if d < 1:
        raise ValidationError(f"extension degree must be positive, got {d}")
    big = make_field(p, a * d)
    for code in big.nonzero():
        tau = big.element(code)
        if frobenius_orbit_rank(tau, q, d) == d:
            logger.debug(f"GF({q}^{d}) 正规基生成元: {tau}")
            return tau
    raise ValidationError(f"no normal basis found for GF({q}^{d})")


def _evaluate(big: GaloisField, coeffs: Sequence[int], z: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = big.add(big.mul(acc, z), c % big.p)
    return acc


def subfield_embedding(big: GaloisField, small: GaloisField) -> List[int]:
    """
    GF(q) → GF(q^d) 的嵌入，返回按 small 编码索引的 big 编码列表

    取 small 模多项式在 big 中的最小根 ζ，x ↦ ζ。
    """
    if big.p != small.p or big.k % small.k:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")
    if small.k == 1:
        return list(range(small.q))
    zeta = next(z for z in big.nonzero() if _evaluate(big, small.modulus, z) == 0)
    powers = [1]
    for _ in range(1, small.k):
        powers.append(big.mul(powers[-1], zeta))
    table = []
    for code in small.elements():
        acc = 0
        for c, power in zip(small.digits(code), powers):
            if c:
                acc = big.add(acc, big.mul(c, power))
        table.append(acc)
    return table


def normal_basis_coordinates(
    basis: Sequence[FieldElement],
    small: GaloisField,
    v: FieldElement,
) -> List[int]:
    """
    v = Σ c_j b_j，返回 c_j 的 small 编码

    按素域展开为 a·d 元线性方程组求解。
    """
    big = v.field
    d = len(basis)
    embed = subfield_embedding(big, small)
    prime = make_field(big.p, 1)
    # 未知量 c_{j,i}，对应大域元素 ζ^i b_j
    columns = []
    for b in basis:
        for i in range(small.k):
            zeta_i = embed[small.p ** i] if small.k > 1 else 1
            columns.append(big.digits(big.mul(zeta_i, b.value)))
    n = d * small.k
    if n != big.k:
        raise FieldMismatch("basis size does not match the extension degree")
    matrix = [[columns[col][row] for col in range(n)] for row in range(n)]
    solution = solve(prime, matrix, big.digits(v.value))
    return [
        small.from_digits(solution[j * small.k:(j + 1) * small.k])
        for j in range(d)
    ]


__all__ = [
    "frobenius_orbit",
    "frobenius_orbit_rank",
    "normal_basis_generator",
    "subfield_embedding",
    "normal_basis_coordinates",
]
