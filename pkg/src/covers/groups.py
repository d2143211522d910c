"""
窗口中的显式有限群

每个群提供：描述符、阶、单位元、乘法与逆、按字典序惰性枚举的元素、
随机元素，以及元素与字符串之间的转换。

描述符：`Sym(n)`、`Alt(n)`、`Z(n)`、`SL(d,q)`。
"""

import math
import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Iterator, List, Sequence, Tuple

from src.core.exceptions import ParseError, ValidationError
from src.core.logging_setup import get_logger
from src.fields.galois import GaloisField, field_of_order
from src.matrices.matrix import FieldMatrix, format_matrix, parse_matrix, random_sl, sl_order
from src.permutations.permutation import Permutation, format_cycles, parse_cycles

logger = get_logger(__name__)

_DESCRIPTOR = re.compile(r"^\s*(Sym|Alt|Z|SL)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


class FiniteGroup(ABC):
    """窗口中单个群的统一接口"""

    @property
    @abstractmethod
    def descriptor(self) -> str:
        ...

    @property
    @abstractmethod
    def order(self) -> int:
        ...

    @abstractmethod
    def identity(self) -> Any:
        ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def inv(self, a: Any) -> Any:
        ...

    @abstractmethod
    def elements(self) -> Iterator[Any]:
        """按字典序惰性枚举"""

    @abstractmethod
    def random_element(self, rng: random.Random) -> Any:
        ...

    @abstractmethod
    def contains(self, a: Any) -> bool:
        ...

    @abstractmethod
    def parse(self, text: str) -> Any:
        ...

    @abstractmethod
    def format(self, a: Any) -> str:
        ...

    def least_outside(self, excluded) -> Any:
        """字典序最小的、不在 excluded 中的元素；不存在时返回 None"""
        return next((a for a in self.elements() if a not in excluded), None)

    def __str__(self) -> str:
        return self.descriptor


@dataclass(frozen=True)
class SymmetricGroup(FiniteGroup):
    n: int

    @property
    def descriptor(self) -> str:
        return f"Sym({self.n})"

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def mul(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def inv(self, a: Permutation) -> Permutation:
        return a.inverse()

    def elements(self) -> Iterator[Permutation]:
        return (Permutation(p) for p in permutations(range(self.n)))

    def random_element(self, rng: random.Random) -> Permutation:
        return Permutation(rng.sample(range(self.n), self.n))

    def contains(self, a: Any) -> bool:
        return isinstance(a, Permutation) and a.degree == self.n

    def parse(self, text: str) -> Permutation:
        return parse_cycles(text, self.n)

    def format(self, a: Permutation) -> str:
        return format_cycles(a)


@dataclass(frozen=True)
class AlternatingGroup(SymmetricGroup):

    @property
    def descriptor(self) -> str:
        return f"Alt({self.n})"

    @property
    def order(self) -> int:
        return max(1, math.factorial(self.n) // 2)

    def elements(self) -> Iterator[Permutation]:
        return (p for p in super().elements() if p.is_even())

    def random_element(self, rng: random.Random) -> Permutation:
        p = super().random_element(rng)
        if p.is_even():
            return p
        return Permutation.transposition(0, 1, self.n) * p

    def contains(self, a: Any) -> bool:
        return super().contains(a) and a.is_even()

    def parse(self, text: str) -> Permutation:
        p = super().parse(text)
        if not p.is_even():
            raise ParseError(f"{text!r} is not in {self.descriptor}")
        return p


@dataclass(frozen=True)
class CyclicGroup(FiniteGroup):
    """加法循环群 Z/n，元素为 0..n-1"""
    n: int

    @property
    def descriptor(self) -> str:
        return f"Z({self.n})"

    @property
    def order(self) -> int:
        return self.n

    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def inv(self, a: int) -> int:
        return (-a) % self.n

    def elements(self) -> Iterator[int]:
        return iter(range(self.n))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.n)

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and 0 <= a < self.n

    def parse(self, text: str) -> int:
        try:
            value = int(text.strip())
        except ValueError as e:
            raise ParseError(f"bad element of {self.descriptor}: {text!r}", cause=e)
        if not self.contains(value):
            raise ParseError(f"{value} is not in {self.descriptor}")
        return value

    def format(self, a: int) -> str:
        return str(a)


@dataclass(frozen=True)
class LinearGroup(FiniteGroup):
    """SL(d, q)，按 entries 的编码字典序枚举"""
    d: int
    q: int

    @property
    def field(self) -> GaloisField:
        return field_of_order(self.q)

    @property
    def descriptor(self) -> str:
        return f"SL({self.d},{self.q})"

    @property
    def order(self) -> int:
        return sl_order(self.d, self.q)

    def identity(self) -> FieldMatrix:
        return FieldMatrix.identity(self.field, self.d)

    def mul(self, a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
        return a * b

    def inv(self, a: FieldMatrix) -> FieldMatrix:
        return a.inverse()

    def elements(self) -> Iterator[FieldMatrix]:
        f, d = self.field, self.d
        for flat in product(range(self.q), repeat=d * d):
            m = FieldMatrix(f, [list(flat[i * d:(i + 1) * d]) for i in range(d)])
            if m.det() == 1:
                yield m

    def random_element(self, rng: random.Random) -> FieldMatrix:
        return random_sl(self.d, self.field, rng)

    def contains(self, a: Any) -> bool:
        return isinstance(a, FieldMatrix) and a.d == self.d and a.field.q == self.q and a.det() == 1

    def parse(self, text: str) -> FieldMatrix:
        m = parse_matrix(text, self.field)
        if not self.contains(m):
            raise ParseError(f"{text!r} is not in {self.descriptor}")
        return m

    def format(self, a: FieldMatrix) -> str:
        return format_matrix(a)


@lru_cache(maxsize=256)
def parse_group(text: str) -> FiniteGroup:
    """解析单个群描述符"""
    match = _DESCRIPTOR.match(text)
    if match is None:
        raise ParseError(f"bad group descriptor: {text!r}", details={"expected": "Sym(n) | Alt(n) | Z(n) | SL(d,q)"})
    kind, first, second = match.group(1), int(match.group(2)), match.group(3)
    if kind == "SL":
        if second is None:
            raise ParseError(f"SL needs two parameters: {text!r}")
        return LinearGroup(first, int(second))
    if second is not None:
        raise ParseError(f"{kind} takes one parameter: {text!r}")
    if first < 1:
        raise ParseError(f"group parameter must be positive: {text!r}")
    return {"Sym": SymmetricGroup, "Alt": AlternatingGroup, "Z": CyclicGroup}[kind](first)


def check_group(group: FiniteGroup, rng: random.Random, samples: int = 64, exhaustive_cap: int = 720) -> None:
    """
    单位元与逆元在阶不超过 exhaustive_cap 时逐个检查，否则抽样；结合律抽样检查

    Raises:
        ValidationError: 任一检查失败
    """
    one = group.identity()
    if group.order <= exhaustive_cap:
        pool = list(group.elements())
        if len(pool) != group.order:
            raise ValidationError(f"{group} enumerates {len(pool)} elements, expected {group.order}")
    else:
        pool = [group.random_element(rng) for _ in range(samples)]
    for a in pool:
        if group.mul(one, a) != a or group.mul(a, one) != a or group.mul(a, group.inv(a)) != one:
            raise ValidationError(f"identity/inverse check failed in {group}", details={"element": group.format(a)})
    for _ in range(samples):
        a, b, c = (group.random_element(rng) for _ in range(3))
        if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)):
            raise ValidationError(f"associativity check failed in {group}")


@dataclass(frozen=True)
class GroupFamily:
    """有限窗口 G_0..G_{N-1}；窗口之外的下标视为自动满足"""
    groups: Tuple[FiniteGroup, ...]

    @classmethod
    def parse(cls, descriptors: Sequence[str]) -> "GroupFamily":
        if not descriptors:
            raise ParseError("empty group window")
        return cls(tuple(parse_group(d) for d in descriptors))

    def __len__(self) -> int:
        return len(self.groups)

    def __getitem__(self, n: int) -> FiniteGroup:
        return self.groups[n]

    def __iter__(self):
        return iter(self.groups)

    def describe(self) -> List[str]:
        return [g.descriptor for g in self.groups]

    def identity(self) -> Tuple[Any, ...]:
        return tuple(g.identity() for g in self.groups)

    def mul(self, a: Sequence[Any], b: Sequence[Any]) -> Tuple[Any, ...]:
        return tuple(g.mul(x, y) for g, x, y in zip(self.groups, a, b))

    def inv(self, a: Sequence[Any]) -> Tuple[Any, ...]:
        return tuple(g.inv(x) for g, x in zip(self.groups, a))

    def random_tuple(self, rng: random.Random) -> Tuple[Any, ...]:
        return tuple(g.random_element(rng) for g in self.groups)

    def format_tuple(self, a: Sequence[Any]) -> List[str]:
        return [g.format(x) for g, x in zip(self.groups, a)]

    def parse_tuple(self, texts: Sequence[str]) -> Tuple[Any, ...]:
        if len(texts) != len(self.groups):
            raise ParseError(f"tuple has {len(texts)} entries, window has {len(self.groups)}")
        return tuple(g.parse(t) for g, t in zip(self.groups, texts))

    def check(self, rng: random.Random, samples: int = 64) -> None:
        for g in self.groups:
            check_group(g, rng, samples)
        logger.debug(f"✅ 群窗口检查通过: {', '.join(self.describe())}")


__all__ = [
    "FiniteGroup",
    "SymmetricGroup",
    "AlternatingGroup",
    "CyclicGroup",
    "LinearGroup",
    "GroupFamily",
    "parse_group",
    "check_group",
]
