"""
置换

点集 {0..n-1}，合成约定 (a·b)(x) = a(b(x))（从右向左，左作用）。
文本格式使用 1 起始的循环记号 `(1 2)(3 4)`，恒等置换打印为 `()`。
"""

import math
import re
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import DegreeMismatch, ParseError, ValidationError

_CYCLE_TEXT = re.compile(r"\s*(\(\s*(?:\d+(?:\s+\d+)*)?\s*\)\s*)*")
_CYCLE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """不可变置换，images[i] = π(i)"""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError("images do not form a bijection", details={"images": list(images)})
        self._store(images)

    def _store(self, images: Tuple[int, ...]) -> None:
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        """乘积与逆元已知是双射，跳过校验"""
        p = cls.__new__(cls)
        p._store(images)
        return p

    def __setattr__(self, key, value):
        raise AttributeError("Permutation is immutable")

    # --- 构造 ---

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """由 0 起始的循环列表构造，按书写顺序相乘"""
        result = cls.identity(n)
        for cycle in cycles:
            images = list(range(n))
            for i, x in enumerate(cycle):
                if not 0 <= x < n:
                    raise DegreeMismatch(f"point {x} outside degree {n}")
                images[x] = cycle[(i + 1) % len(cycle)]
            result = result * cls(images)
        return result

    @classmethod
    def transposition(cls, a: int, b: int, n: int) -> "Permutation":
        return cls.from_cycles([(a, b)], n) if a != b else cls.identity(n)

    # --- 基本运算 ---

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(details={"left": self.degree, "right": other.degree})
        a = self.images
        return Permutation._trusted(tuple(a[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._trusted(tuple(inv))

    def conjugate(self, rho: "Permutation") -> "Permutation":
        """ρ π ρ⁻¹"""
        return rho * self * rho.inverse()

    def identity_like(self) -> "Permutation":
        return Permutation.identity(self.degree)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    # --- 循环结构 ---

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """不相交循环，每个循环从最小点开始，按最小点排序"""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        """循环长度的多重集（降序，含不动点）"""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def parity(self) -> str:
        transpositions = sum(len(c) - 1 for c in self.cycles())
        return "even" if transpositions % 2 == 0 else "odd"

    def is_even(self) -> bool:
        return self.parity() == "even"

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def support(self) -> List[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def fixes(self, x: int) -> bool:
        return self.images[x] == x

    def is_fixed_point_free_involution(self) -> bool:
        return all(x != i and self.images[x] == i for i, x in enumerate(self.images))

    def as_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    # --- 比较与打印 ---

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._hash == other._hash and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)}, n={self.degree})"


# === 函数式接口 ===

def compose(a: Permutation, b: Permutation) -> Permutation:
    return a * b


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def cycle_type(a: Permutation) -> Tuple[int, ...]:
    return a.cycle_type()


def parity(a: Permutation) -> str:
    return a.parity()


def conjugate(a: Permutation, rho: Permutation) -> Permutation:
    return a.conjugate(rho)


def order(a: Permutation) -> int:
    return a.order()


def parse_cycles(text: str, n: Optional[int] = None) -> Permutation:
    """
    解析 1 起始的循环记号

    Args:
        text: 如 "(1 2)(3 4)"；"()" 为恒等置换
        n: 次数，缺省取出现的最大点
    """
    if not text.strip() or _CYCLE_TEXT.fullmatch(text) is None:
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        points = [int(x) - 1 for x in body.split()]
        if any(x < 0 for x in points) or len(set(points)) != len(points):
            raise ParseError(f"malformed cycle notation: {text!r}")
        if len(points) > 1:
            cycles.append(points)
    largest = max((x + 1 for c in cycles for x in c), default=0)
    if n is None:
        n = largest
    elif largest > n:
        raise ParseError(f"point {largest} exceeds degree {n}", details={"text": text})
    return Permutation.from_cycles(cycles, n)


def format_cycles(a: Permutation) -> str:
    cycles = a.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def canonical_representative(cycle_lengths: Sequence[int], n: int) -> Permutation:
    """给定循环型的标准代表：按长度降序，依次占用连续的点"""
    cycles, start = [], 0
    for length in sorted(cycle_lengths, reverse=True):
        cycles.append(tuple(range(start, start + length)))
        start += length
    if start != n:
        raise DegreeMismatch(details={"cycle_type": list(cycle_lengths), "n": n})
    return Permutation.from_cycles([c for c in cycles if len(c) > 1], n)


def aligning_conjugator(source: Permutation, target: Permutation) -> Permutation:
    """
    返回 ρ 使 ρ·source·ρ⁻¹ = target

    两者循环型必须一致；循环按长度降序、最小点升序对齐。
    """
    if source.cycle_type() != target.cycle_type():
        raise ValidationError("permutations are not conjugate")

    def ordered(p: Permutation):
        return sorted(p.cycles(include_fixed=True), key=lambda c: (-len(c), c[0]))

    rho = [0] * source.degree
    for cs, ct in zip(ordered(source), ordered(target)):
        for x, y in zip(cs, ct):
            rho[x] = y
    return Permutation(rho)


def even_permutations_array(n: int) -> np.ndarray:
    """Alt(n) 的全部元素（按字典序），行向量为 images"""
    from itertools import permutations

    rows = [p for p in permutations(range(n)) if Permutation(p).is_even()]
    return np.array(rows, dtype=np.int64).reshape(-1, n)


__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "cycle_type",
    "parity",
    "conjugate",
    "order",
    "parse_cycles",
    "format_cycles",
    "canonical_representative",
    "aligning_conjugator",
    "even_permutations_array",
]
