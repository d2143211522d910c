"""
Alt(8n) 上的 9 项分解：φ = ψ₁ θ ψ₂ θ ... θ ψ₉，ψᵢ ∈ Γ = Alt(Δ₀) × Alt(Δ₁)

Δ₀ = {0..4n-1}，Δ₁ = {4n..8n-1}（0 起始）。
θ 交换 Δ₀ 的偶数点与 Δ₁ 的奇数点：θ = ∏_{j<2n} (2j, 4n+2j+1)，
因此 θ(Δ₀) 为全部奇数点，θ(Δ₁) 为全部偶数点。

流程：Brenner 将 φ 拆成 4 个 2^{4n} 型对合，每个对合 π 写成 ψ₁⁻¹ θ ψ₂ θ ψ₁，
相邻的 Γ 字母合并后得到 9 个 Γ 字母与 8 个 θ。
"""

from typing import Dict, List, Tuple

from src.core.exceptions import DegreeMismatch, NotEven, ValidationError
from src.core.logging_setup import get_logger
from src.permutations.brenner import brenner_factor
from src.permutations.permutation import Permutation
from src.permutations.uni1 import TAG_THETA, check_degree
from src.permutations.witness import FactorizationWitness, Predicate

logger = get_logger(__name__)

TAG_GAMMA = "Gamma"


def uni2_theta(n: int) -> Permutation:
    return Permutation.from_cycles([(2 * j, 4 * n + 2 * j + 1) for j in range(2 * n)], 8 * n)


def in_gamma(p: Permutation, n: int) -> bool:
    """保持 Δ₀、Δ₁ 且在两块上都是偶置换"""
    half = 4 * n
    if p.degree != 8 * n or any((x < half) != (p(x) < half) for x in range(8 * n)):
        return False
    transpositions = [0, 0]
    for cycle in p.cycles():
        transpositions[0 if cycle[0] < half else 1] += len(cycle) - 1
    return transpositions[0] % 2 == 0 and transpositions[1] % 2 == 0


def uni2_predicates(n: int) -> Dict[str, Predicate]:
    theta = uni2_theta(n)
    return {
        TAG_GAMMA: lambda p: in_gamma(p, n),
        TAG_THETA: lambda p: p == theta,
    }


def _block_map(sources: List[int], targets: List[int], rest: List[int], rest_targets: List[int]) -> Dict[int, int]:
    """sources → targets、rest → rest_targets 按排序对应；奇置换时交换 rest 中两点的像"""
    mapping = dict(zip(sorted(sources), sorted(targets)))
    mapping.update(zip(sorted(rest), sorted(rest_targets)))
    points = sorted(mapping)
    local = Permutation([points.index(mapping[x]) for x in points])
    if not local.is_even():
        a, b = sorted(rest)[:2]
        mapping[a], mapping[b] = mapping[b], mapping[a]
    return mapping


def uni2_involution_factor(pi: Permutation, n: int) -> Tuple[FactorizationWitness, int]:
    """
    2^{4n} 型对合 π = ψ₁⁻¹ θ ψ₂ θ ψ₁

    取 A = {ℓ ∈ Δ₀ | π(ℓ) ∈ Δ₀}，C 为跨块点，t = |C ∩ Δ₀|：
    - 情形 1（t ≥ 2n）：D 为 C ∩ Δ₀ 中最小的 2n 个点，E = π[D]
    - 情形 2（t < 2n）：D、E 分别为 A、B 中最小的 n 个 π-对

    ψ₁ 把 D、E 送到 Δ₀、Δ₁ 的奇数点，使 ψ₁πψ₁⁻¹ 保持奇偶类，
    于是 ψ₂ = θ ψ₁ π ψ₁⁻¹ θ ∈ Γ。

    Returns:
        (3 个 Γ 字母与 2 个 θ 的见证, 情形编号)
    """
    if pi.degree != 8 * n:
        raise DegreeMismatch(details={"degree": pi.degree, "expected": 8 * n})
    if not pi.is_fixed_point_free_involution():
        raise ValidationError("expected a fixed-point-free involution", details={"pi": str(pi)})

    half = 4 * n
    delta0, delta1 = list(range(half)), list(range(half, 8 * n))
    crossing0 = [x for x in delta0 if pi(x) >= half]
    t = len(crossing0)

    if t >= 2 * n:
        case = 1
        d_set = crossing0[:2 * n]
        e_set = [pi(x) for x in d_set]
    else:
        case = 2

        def least_pairs(block: List[int]) -> List[int]:
            chosen: List[int] = []
            for x in block:
                y = pi(x)
                if x < y and (y < half) == (x < half) and len(chosen) < 2 * n:
                    chosen.extend([x, y])
            return chosen

        d_set = least_pairs(delta0)
        e_set = least_pairs(delta1)

    odd0 = [x for x in delta0 if x % 2 == 1]
    even0 = [x for x in delta0 if x % 2 == 0]
    odd1 = [x for x in delta1 if x % 2 == 1]
    even1 = [x for x in delta1 if x % 2 == 0]
    mapping = _block_map(d_set, odd0, [x for x in delta0 if x not in d_set], even0)
    mapping.update(_block_map(e_set, odd1, [x for x in delta1 if x not in e_set], even1))
    psi1 = Permutation(mapping[x] for x in range(8 * n))

    theta = uni2_theta(n)
    psi2 = theta * psi1 * pi * psi1.inverse() * theta
    pairs = [(psi1.inverse(), TAG_GAMMA), (theta, TAG_THETA), (psi2, TAG_GAMMA), (theta, TAG_THETA), (psi1, TAG_GAMMA)]
    return FactorizationWitness.from_pairs(pi, pairs), case


def uni2_factor(phi: Permutation, n: int) -> FactorizationWitness:
    """
    φ ∈ Alt(8n) 的 9 项分解

    Returns:
        字母形状 Γ θ Γ θ Γ θ Γ θ Γ θ Γ θ Γ θ Γ θ Γ 的见证

    Raises:
        SearchExhausted: 由 Brenner 分解传出
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if phi.degree != 8 * n:
        raise DegreeMismatch(details={"degree": phi.degree, "expected": 8 * n})
    check_degree(phi.degree)
    if not phi.is_even():
        raise NotEven(details={"phi": str(phi)})

    theta = uni2_theta(n)
    if phi.is_identity():
        identity = phi.identity_like()
        pairs = [(identity, TAG_GAMMA)]
        for _ in range(8):
            pairs += [(theta, TAG_THETA), (identity, TAG_GAMMA)]
        return FactorizationWitness.from_pairs(phi, pairs)

    involutions = brenner_factor(phi, 2 * n).elements
    cores = [uni2_involution_factor(pi, n)[0].elements for pi in involutions]

    gamma_letters = [cores[0][0], cores[0][2]]
    for previous, current in zip(cores, cores[1:]):
        gamma_letters.append(previous[4] * current[0])
        gamma_letters.append(current[2])
    gamma_letters.append(cores[-1][4])

    pairs = [(gamma_letters[0], TAG_GAMMA)]
    for letter in gamma_letters[1:]:
        pairs += [(theta, TAG_THETA), (letter, TAG_GAMMA)]
    return FactorizationWitness.from_pairs(phi, pairs)


__all__ = [
    "uni2_factor",
    "uni2_involution_factor",
    "uni2_theta",
    "uni2_predicates",
    "in_gamma",
    "TAG_GAMMA",
]
