"""
Brenner 分解：Alt(4n) 中任一元素是 4 个 2^{2n} 型对合（无不动点对合）之积

两种求解方式：
1. |C| ≤ BRENNER_TABLE_CAP：预计算 C·C 哈希表，中间相遇扫描；
   结果按循环型缓存在标准代表上，其它元素通过共轭对齐得到。
2. 更大的类：有种子的随机采样 + 构造性拆分，重试次数受 SEARCH_RETRY_CAP 限制。
"""

import random
import threading
from collections import defaultdict
from typing import Dict, List, Tuple

from cachetools import LRUCache, cached
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from src.core.exceptions import DegreeMismatch, NotEven, SearchExhausted, ValidationError
from src.core.logging_setup import get_logger
from src.core.metrics import metrics
from src.core.settings import get_settings
from src.permutations.permutation import (
    Permutation,
    aligning_conjugator,
    canonical_representative,
)
from src.permutations.uni1 import check_degree
from src.permutations.witness import FactorizationWitness, Predicate

logger = get_logger(__name__)

TAG_INVOLUTION = "C"

Quad = Tuple[Permutation, Permutation, Permutation, Permutation]


def class_size(n_points: int) -> int:
    """无不动点对合的个数 (2k-1)!!"""
    size = 1
    for odd in range(n_points - 1, 0, -2):
        size *= odd
    return size


def fixed_point_free_involutions(n_points: int) -> List[Permutation]:
    """按"最小未配对点依次与更大点配对"的顺序枚举"""
    out: List[Permutation] = []
    images = [-1] * n_points

    def extend():
        try:
            first = images.index(-1)
        except ValueError:
            out.append(Permutation(images))
            return
        for partner in range(first + 1, n_points):
            if images[partner] == -1:
                images[first], images[partner] = partner, first
                extend()
                images[first] = images[partner] = -1

    extend()
    return out


def standard_involution(n_points: int) -> Permutation:
    """(0 1)(2 3)..."""
    return Permutation.from_cycles([(i, i + 1) for i in range(0, n_points, 2)], n_points)


def brenner_predicates(n: int) -> Dict[str, Predicate]:
    return {TAG_INVOLUTION: lambda p: p.degree == 4 * n and p.is_fixed_point_free_involution()}


# === 中间相遇 ===

class ProductTable:
    """C·C 表：乘积 → 首次出现的 (c1, c2)"""

    def __init__(self, n_points: int):
        self.n_points = n_points
        self.involutions = fixed_point_free_involutions(n_points)
        self.products: Dict[Permutation, Tuple[Permutation, Permutation]] = {}
        for a in self.involutions:
            for b in self.involutions:
                self.products.setdefault(a * b, (a, b))
        logger.info(
            f"✅ C·C 表已生成: {n_points} 点, |C|={len(self.involutions)}, |C·C|={len(self.products)}"
        )

    def factor(self, phi: Permutation) -> Quad:
        for x, (c1, c2) in self.products.items():
            rest = self.products.get(x.inverse() * phi)
            if rest is not None:
                return c1, c2, rest[0], rest[1]
        raise SearchExhausted(details={"phi": str(phi), "points": self.n_points})


_table_lock = threading.Lock()
_tables: Dict[int, ProductTable] = {}


def product_table(n_points: int) -> ProductTable:
    """C·C 表只构建一次，之后只读共享"""
    with _table_lock:
        if n_points not in _tables:
            _tables[n_points] = ProductTable(n_points)
        return _tables[n_points]


@cached(LRUCache(maxsize=4096), lock=threading.Lock())
def _canonical_quad(cycle_lengths: Tuple[int, ...]) -> Quad:
    n_points = sum(cycle_lengths)
    metrics.record_table_miss("brenner")
    rep = canonical_representative(cycle_lengths, n_points)
    return product_table(n_points).factor(rep)


def _factor_by_table(phi: Permutation) -> Quad:
    quad = _canonical_quad(phi.cycle_type())
    metrics.record_table_hit("brenner")
    rep = canonical_representative(phi.cycle_type(), phi.degree)
    rho = aligning_conjugator(rep, phi)
    return tuple(c.conjugate(rho) for c in quad)


# === 随机采样 ===

class _Rejected(Exception):
    """单次采样失败"""


def random_involution(n_points: int, rng: random.Random) -> Permutation:
    points = list(range(n_points))
    rng.shuffle(points)
    return Permutation.from_cycles([(points[i], points[i + 1]) for i in range(0, n_points, 2)], n_points)


def is_involution_product(x: Permutation) -> bool:
    """x ∈ C·C 当且仅当每种长度的循环个数为偶数"""
    counts: Dict[int, int] = defaultdict(int)
    for length in x.cycle_type():
        counts[length] += 1
    return all(c % 2 == 0 for c in counts.values())


def split_involution_product(x: Permutation) -> Tuple[Permutation, Permutation]:
    """
    构造 x = a·b，a、b 为无不动点对合

    同长循环两两配对：(x_0..x_{k-1}) 与 (z_0..z_{k-1})，
    b: x_i ↔ z_{-i}，a = x·b: x_i ↔ z_{1-i}。
    """
    if not is_involution_product(x):
        raise ValidationError("cycle multiplicities are not all even", details={"x": str(x)})
    by_length: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for cycle in x.cycles(include_fixed=True):
        by_length[len(cycle)].append(cycle)
    b = list(range(x.degree))
    for length, cycles in by_length.items():
        for first, second in zip(cycles[0::2], cycles[1::2]):
            for i in range(length):
                u, v = first[i], second[(-i) % length]
                b[u], b[v] = v, u
    b_perm = Permutation(b)
    return x * b_perm, b_perm


def _factor_by_sampling(phi: Permutation) -> Quad:
    config = get_settings()
    rng = random.Random(f"{config.run.seed}:{phi.images}")
    n_points = phi.degree

    def attempt() -> Quad:
        c1 = random_involution(n_points, rng)
        c2 = random_involution(n_points, rng)
        rest = (c1 * c2).inverse() * phi
        if not is_involution_product(rest):
            raise _Rejected()
        c3, c4 = split_involution_product(rest)
        return c1, c2, c3, c4

    retryer = Retrying(
        stop=stop_after_attempt(config.permutation.search_retry_cap),
        retry=retry_if_exception_type(_Rejected),
        reraise=True,
    )
    try:
        return retryer(attempt)
    except _Rejected as e:
        raise SearchExhausted(
            details={"phi": str(phi), "attempts": config.permutation.search_retry_cap},
            cause=e,
        )


# === 入口 ===

def brenner_factor(phi: Permutation, n: int) -> FactorizationWitness:
    """
    φ ∈ Alt(4n) 分解为 4 个 2^{2n} 型对合之积

    Raises:
        DegreeMismatch / NotEven / SearchExhausted
    """
    if n < 2:
        raise ValidationError(f"n must be at least 2, got {n}")
    if phi.degree != 4 * n:
        raise DegreeMismatch(details={"degree": phi.degree, "expected": 4 * n})
    check_degree(phi.degree)
    if not phi.is_even():
        raise NotEven(details={"phi": str(phi)})

    if phi.is_identity():
        pi = standard_involution(4 * n)
        quad = (pi, pi, pi, pi)
    elif class_size(4 * n) <= get_settings().permutation.brenner_table_cap:
        quad = _factor_by_table(phi)
    else:
        quad = _factor_by_sampling(phi)
    return FactorizationWitness.from_pairs(phi, [(c, TAG_INVOLUTION) for c in quad])


__all__ = [
    "brenner_factor",
    "brenner_predicates",
    "fixed_point_free_involutions",
    "standard_involution",
    "random_involution",
    "is_involution_product",
    "split_involution_product",
    "product_table",
    "class_size",
    "TAG_INVOLUTION",
]
