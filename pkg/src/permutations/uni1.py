"""
双陪集分解：Alt(m+1) 中 φ = ψ₁ θ ψ₂ θ ψ₃，ψᵢ ∈ Alt(m)

内部 0 起始：Alt(m) 为固定最后一点 L = m 的偶置换，
θ = (m-3 m-2)(m-1 m)。
"""

from typing import Dict, List, Tuple

from src.core.exceptions import CapExceeded, DegreeMismatch, NotEven, ValidationError
from src.core.settings import get_settings
from src.permutations.permutation import Permutation
from src.permutations.witness import FactorizationWitness, Predicate

TAG_ALT = "Alt"
TAG_THETA = "theta"
TAG_SYM = "Sym"


def check_degree(n: int) -> None:
    """次数不超过配置上限"""
    cap = get_settings().permutation.max_degree
    if n > cap:
        raise CapExceeded(f"degree {n} exceeds PERM_MAX_DEGREE={cap}", details={"degree": n, "cap": cap})


def uni1_theta(m: int) -> Permutation:
    return Permutation.from_cycles([(m - 3, m - 2), (m - 1, m)], m + 1)


def uni1_predicates(m: int) -> Dict[str, Predicate]:
    theta = uni1_theta(m)
    return {
        TAG_ALT: lambda p: p.degree == m + 1 and p.fixes(m) and p.is_even(),
        TAG_THETA: lambda p: p == theta,
    }


def uni1_factor(phi: Permutation, m: int) -> FactorizationWitness:
    """
    φ ∈ Alt(m+1) 分解为 ψ₁ θ ψ₂ θ ψ₃

    Args:
        phi: m+1 个点上的偶置换
        m: ≥ 3

    Returns:
        形状固定为 [Alt, theta, Alt, theta, Alt] 的见证

    Raises:
        DegreeMismatch: phi 的次数不是 m+1
        NotEven: phi 为奇置换
    """
    if m < 3:
        raise ValidationError(f"m must be at least 3, got {m}")
    if phi.degree != m + 1:
        raise DegreeMismatch(details={"degree": phi.degree, "expected": m + 1})
    check_degree(phi.degree)
    if not phi.is_even():
        raise NotEven(details={"phi": str(phi)})

    n = m + 1
    last = m
    theta = uni1_theta(m)
    identity = Permutation.identity(n)

    if phi.fixes(last):
        pairs = [(phi, TAG_ALT), (theta, TAG_THETA), (identity, TAG_ALT), (theta, TAG_THETA), (identity, TAG_ALT)]
        return FactorizationWitness.from_pairs(phi, pairs)

    psi2 = Permutation.from_cycles([(m - 3, m - 2, m - 1)], n)
    tau = theta * psi2 * theta
    b = tau(last)
    y = phi(last)
    if y == b:
        psi1 = identity
    else:
        z = next(x for x in range(m) if x not in (b, y))
        psi1 = Permutation.from_cycles([(b, y, z)], n)
    psi3 = tau.inverse() * psi1.inverse() * phi

    pairs = [(psi1, TAG_ALT), (theta, TAG_THETA), (psi2, TAG_ALT), (theta, TAG_THETA), (psi3, TAG_ALT)]
    return FactorizationWitness.from_pairs(phi, pairs)


def weyl_double_coset(w: Permutation) -> List[Tuple[Permutation, str]]:
    """
    Sym(N) 中的同型分解：w = ψ₁ θ ψ₂ θ ψ₃，ψᵢ ∈ Sym(N-1)，θ = (N-2 N-1)

    w 固定最后一点时返回 [(w, Sym)]。
    """
    n = w.degree
    if n < 3:
        raise ValidationError(f"degree must be at least 3, got {n}")
    last = n - 1
    if w.fixes(last):
        return [(w, TAG_SYM)]
    theta = Permutation.transposition(n - 2, n - 1, n)
    psi2 = Permutation.transposition(n - 3, n - 2, n)
    tau = Permutation.transposition(n - 3, n - 1, n)
    psi3 = Permutation.transposition(w.inverse()(last), n - 3, n)
    psi1 = w * psi3 * tau
    return [(psi1, TAG_SYM), (theta, TAG_THETA), (psi2, TAG_SYM), (theta, TAG_THETA), (psi3, TAG_SYM)]


__all__ = [
    "uni1_factor",
    "uni1_theta",
    "uni1_predicates",
    "weyl_double_coset",
    "check_degree",
    "TAG_ALT",
    "TAG_THETA",
    "TAG_SYM",
]
