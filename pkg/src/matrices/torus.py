"""
正则环面元素的对合分解

在 GF(q^{4n}) 的正规基 {τ^{q^j}} 下：
- π₁ 为 Frobenius 幂 g = f^{2n} 的矩阵，即置换 j ↦ j+2n (mod 4n)，型为 2^{2n}；
- ψ 为乘以 γ 的矩阵，γ 的阶为本原素因子 r = zsigmondy_prime(q, 4n)；
- π₂ = π₁ψ，于是 ψ = π₁π₂，π₁² = π₂² = I，π₁ψπ₁⁻¹ = ψ⁻¹。
"""

from dataclasses import dataclass
from typing import List

from src.core.logging_setup import get_logger
from src.fields.galois import FieldElement, make_field, split_prime_power
from src.fields.normal_basis import frobenius_orbit, normal_basis_coordinates, normal_basis_generator
from src.fields.number_theory import zsigmondy_prime
from src.matrices.matrix import FieldMatrix, permutation_matrix
from src.permutations.permutation import Permutation

logger = get_logger(__name__)


@dataclass(frozen=True)
class TorusFactorization:
    psi: FieldMatrix
    pi1: FieldMatrix
    pi2: FieldMatrix
    basis: List[FieldElement]
    gamma: FieldElement
    prime: int


def regular_torus_factor(q: int, n: int) -> TorusFactorization:
    """
    Raises:
        NoZsigmondy: 由 zsigmondy_prime 传出
    """
    p, a = split_prime_power(q)
    m = 4 * n
    r = zsigmondy_prime(q, m)
    small = make_field(p, a)
    big = make_field(p, a * m)

    tau = normal_basis_generator(q, m)
    basis = frobenius_orbit(tau, q, m)

    exponent = (big.q - 1) // r
    gamma = next(
        g for g in (big.element(x) ** exponent for x in range(2, big.q)) if g != 1
    )

    columns = [normal_basis_coordinates(basis, small, gamma * b) for b in basis]
    psi = FieldMatrix(small, [[columns[j][i] for j in range(m)] for i in range(m)])
    shift = Permutation([(j + 2 * n) % m for j in range(m)])
    pi1 = permutation_matrix(shift, small)
    pi2 = pi1 * psi
    logger.info(f"✅ 正则环面分解完成: q={q}, n={n}, r={r}")
    return TorusFactorization(psi=psi, pi1=pi1, pi2=pi2, basis=basis, gamma=gamma, prime=r)


__all__ = ["TorusFactorization", "regular_torus_factor"]
