"""
一般序列（generic sequences）

2^m 个点上的对合序列 π₀, π₁, ...：
- t ≤ m-1 时前 t+1 项生成 2^{t+1} 阶初等交换群且半正则作用；
- 对 ℓ ≥ m，π_ℓ = π_{m-1}（尾部重复）。

标准序列把点看作 m 位比特向量，πᵢ 为异或 2^i 的平移。
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import TailRegime, ValidationError
from src.core.logging_setup import get_logger
from src.permutations.brenner import fixed_point_free_involutions
from src.permutations.permutation import Permutation

logger = get_logger(__name__)


@dataclass(frozen=True)
class GenericSequence:
    m: int
    elements: Tuple[Permutation, ...]

    @property
    def t(self) -> int:
        return len(self.elements) - 1

    @property
    def degree(self) -> int:
        return 2 ** self.m

    def generators(self) -> Tuple[Permutation, ...]:
        """半正则部分的生成元 π₀..π_{min(t, m-1)}"""
        return self.elements[: min(self.t, self.m - 1) + 1]


def _translation(mask: int, m: int) -> Permutation:
    return Permutation(x ^ mask for x in range(2 ** m))


def generic_sequence(m: int, t: int) -> GenericSequence:
    """标准一般序列：πᵢ = 异或 2^i（i ≤ min(t, m-1)），尾部重复 π_{m-1}"""
    if m < 1 or t < 0:
        raise ValidationError(f"need m ≥ 1 and t ≥ 0, got m={m}, t={t}")
    elements = tuple(_translation(1 << min(i, m - 1), m) for i in range(t + 1))
    return GenericSequence(m=m, elements=elements)


def generated_group(generators: Sequence[Permutation], n: int) -> List[Permutation]:
    """生成子群的全部元素（闭包），首元素为恒等"""
    identity = Permutation.identity(n)
    seen = {identity: None}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = s * g
                if h not in seen:
                    seen[h] = None
                    nxt.append(h)
        frontier = nxt
    return list(seen)


def is_generic(seq: Sequence[Permutation], m: int) -> bool:
    """逐条检查一般序列的定义"""
    seq = list(seq)
    n = 2 ** m
    if not seq or any(p.degree != n for p in seq):
        return False
    if not all(p.is_even() for p in seq):
        return False
    t = len(seq) - 1
    head = seq[: min(t, m - 1) + 1]
    if not all(p.is_fixed_point_free_involution() for p in head):
        return False
    if any(a * b != b * a for a in head for b in head):
        return False
    group = generated_group(head, n)
    if len(group) != 2 ** len(head):
        return False
    if any(not g.is_identity() and any(g.fixes(x) for x in range(n)) for g in group):
        return False
    return all(seq[ell] == seq[m - 1] for ell in range(m, len(seq)))


def orbit_decomposition(generators: Sequence[Permutation], n: int) -> List[List[int]]:
    """生成群在 {0..n-1} 上的轨道，按最小元排序，轨道内升序"""
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit, stack = [], [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            orbit.append(x)
            for g in generators:
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        orbits.append(sorted(orbit))
    return orbits


def _enumerated_group(generators: Sequence[Permutation], n: int) -> List[Permutation]:
    """E 的固定枚举：恒等在前，其余按 images 字典序"""
    group = generated_group(generators, n)
    identity = Permutation.identity(n)
    return [identity] + sorted(g for g in group if g != identity)


def _paired_involution(seq: GenericSequence) -> Permutation:
    """φ 在 Δ₀ 上把排序后的 α 两两相邻配对，τ = ∏_k e_k φ e_k⁻¹"""
    n = seq.degree
    generators = list(seq.elements)
    alphas = [orbit[0] for orbit in orbit_decomposition(generators, n)]
    images = list(range(n))
    for e in _enumerated_group(generators, n):
        for a, b in zip(alphas[0::2], alphas[1::2]):
            x, y = e(a), e(b)
            images[x], images[y] = y, x
    return Permutation(images)


def diagonal_centralizer_element(seq: GenericSequence) -> Permutation:
    """
    对角子群中与 E 交换的 2^{2^{m-1}} 型元素 τ

    αᵢ 为第 i 个 E-轨道的最小点，Δ_k = {e_k(αᵢ)}。
    |Δ_k| = 2^{m-t-1} 至少为 4 时 τ 在每个 Δ_k 上是偶置换；
    t = m-2 时 |Δ_k| = 2，τ 在 Δ_k 上是奇置换，不在 Alt 的对角子群中。

    Raises:
        TailRegime: t ≥ m-2
    """
    m, t = seq.m, seq.t
    if t >= m - 2:
        raise TailRegime(details={"m": m, "t": t, "delta_size": 2 ** max(m - t - 1, 0)})
    return _paired_involution(seq)


def extend_generic(seq: GenericSequence) -> GenericSequence:
    """t < m-1 时追加与 E 交换的无不动点对合（t ≤ m-3 时即 τ），否则重复第 m-1 项"""
    if seq.t < seq.m - 2:
        nxt = diagonal_centralizer_element(seq)
    elif seq.t == seq.m - 2:
        nxt = _paired_involution(seq)
    else:
        nxt = seq.elements[seq.m - 1]
    return GenericSequence(m=seq.m, elements=seq.elements + (nxt,))


def canonical_conjugator(seq: GenericSequence) -> Permutation:
    """
    构造 ρ 使 ρ πᵢ ρ⁻¹ 为标准序列的第 i 项

    ρ(π^ε(αᵢ)) = i·2^s ⊕ Σ ε_j 2^j，s 为生成元个数。
    """
    n = seq.degree
    gens = list(seq.generators())
    s = len(gens)
    alphas = [orbit[0] for orbit in orbit_decomposition(gens, n)]
    rho = [0] * n
    for i, alpha in enumerate(alphas):
        for eps in range(2 ** s):
            x = alpha
            for j in range(s):
                if eps >> j & 1:
                    x = gens[j](x)
            rho[x] = (i << s) ^ eps
    return Permutation(rho)


@lru_cache(maxsize=4)
def _symmetric_group_array(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64)


def _conjugates(rhos: np.ndarray, a: Permutation) -> np.ndarray:
    """每行 ρ 的 ρ a ρ⁻¹"""
    inverses = np.argsort(rhos, axis=1)
    a_arr = a.as_array()
    return np.take_along_axis(rhos, a_arr[inverses], axis=1)


def _sign(rhos: np.ndarray) -> np.ndarray:
    """逐行置换的符号（+1/-1）"""
    n = rhos.shape[1]
    inversions = np.zeros(rhos.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            inversions += rhos[:, i] > rhos[:, j]
    return np.where(inversions % 2 == 0, 1, -1)


def find_conjugator_exhaustive(
    seq_a: Sequence[Permutation],
    seq_b: Sequence[Permutation],
) -> Optional[Permutation]:
    """在 Sym(n)（n ≤ 8）中穷举 ρ 使 ρ aᵢ ρ⁻¹ = bᵢ 对所有 i 成立"""
    if len(seq_a) != len(seq_b) or not seq_a:
        return None
    n = seq_a[0].degree
    if n > 8:
        raise ValidationError(f"exhaustive conjugator search is limited to 8 points, got {n}")
    rhos = _symmetric_group_array(n)
    for a, b in zip(seq_a, seq_b):
        mask = np.all(_conjugates(rhos, a) == b.as_array(), axis=1)
        rhos = rhos[mask]
        if len(rhos) == 0:
            return None
    return Permutation(rhos[0])


def alt_class_count(seq: Sequence[Permutation]) -> int:
    """
    该序列的 Sym-共轭类分裂成几个 Alt-共轭类

    中心化子含奇置换时为 1，否则为 2。
    """
    n = seq[0].degree
    rhos = _symmetric_group_array(n)
    for a in seq:
        rhos = rhos[np.all(_conjugates(rhos, a) == a.as_array(), axis=1)]
    return 1 if np.any(_sign(rhos) < 0) else 2


def enumerate_generic_sequences(m: int, t: int) -> Iterator[Tuple[Permutation, ...]]:
    """逐项扩展枚举所有一般序列（仅适用于小 m）"""
    n = 2 ** m
    if n > 8:
        raise ValidationError(f"enumeration is limited to m ≤ 3, got m={m}")
    involutions = [p for p in fixed_point_free_involutions(n) if p.is_even()]

    def extend(prefix: Tuple[Permutation, ...]) -> Iterator[Tuple[Permutation, ...]]:
        if len(prefix) == t + 1:
            yield prefix
            return
        if len(prefix) >= m:
            yield from extend(prefix + (prefix[m - 1],))
            return
        for candidate in involutions:
            trial = prefix + (candidate,)
            if is_generic(trial, m):
                yield from extend(trial)

    yield from extend(())


__all__ = [
    "GenericSequence",
    "generic_sequence",
    "generated_group",
    "is_generic",
    "orbit_decomposition",
    "diagonal_centralizer_element",
    "extend_generic",
    "canonical_conjugator",
    "find_conjugator_exhaustive",
    "alt_class_count",
    "enumerate_generic_sequences",
]
