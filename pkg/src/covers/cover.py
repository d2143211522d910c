"""
覆盖与星积

覆盖 c 给窗口中每个下标 n 一个有限子集 c(n) ⊆ G_n：非空、含单位元、对逆封闭。
c 覆盖 g 当且仅当对窗口内每个 n 都有 g(n) ∈ c(n)。

星积 (c₁ * c₂)(n) = {ab, (ab)⁻¹ | a ∈ c₁(n), b ∈ c₂(n)}，结果仍是覆盖，
|(c₁ * c₂)(n)| ≤ 2·|c₁(n)|·|c₂(n)|。星积不满足结合律。
"""

import json
import math
import random
import threading
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from cachetools import LRUCache, cached

from src.core.exceptions import InvalidCover, ParseError, ShapeMismatch
from src.core.logging_setup import get_logger
from src.covers.groups import FiniteGroup, GroupFamily, SymmetricGroup

logger = get_logger(__name__)


@dataclass(frozen=True)
class BoundFunction:
    """f(n) = base^(n + offset)，缺省 2^(n+2)"""
    base: int = 2
    offset: int = 2

    def __post_init__(self):
        if self.base < 1 or self.offset < 0:
            raise InvalidCover("bound function must be positive", details={"base": self.base, "offset": self.offset})

    def __call__(self, n: int) -> int:
        return self.base ** (n + self.offset)

    def hypothesis(self, n: int) -> int:
        """对角构造在下标 n 所需的下界 2^n · f(n)^(n+1)"""
        return 2 ** n * self(n) ** (n + 1)

    def describe(self) -> str:
        return f"{self.base}^(n+{self.offset})"


@dataclass(frozen=True)
class Cover:
    family: GroupFamily
    sets: Tuple[FrozenSet[Any], ...]

    def __post_init__(self):
        if len(self.sets) != len(self.family):
            raise ShapeMismatch(details={"window": len(self.family), "sets": len(self.sets)})
        for n, (group, s) in enumerate(zip(self.family, self.sets)):
            if group.identity() not in s:
                raise InvalidCover(f"index {n} lacks the identity of {group}", details={"index": n})
            for a in s:
                if not group.contains(a):
                    raise InvalidCover(f"index {n} holds an element outside {group}", details={"index": n})
                if group.inv(a) not in s:
                    raise InvalidCover(
                        f"index {n} is not closed under inverse",
                        details={"index": n, "element": group.format(a)},
                    )

    @classmethod
    def from_generators(cls, family: GroupFamily, generators: Sequence[Iterable[Any]]) -> "Cover":
        """每个下标取 {1} ∪ S ∪ S⁻¹"""
        if len(generators) != len(family):
            raise ShapeMismatch(details={"window": len(family), "sets": len(generators)})
        sets = []
        for group, gens in zip(family, generators):
            s = {group.identity()}
            for a in gens:
                s.add(a)
                s.add(group.inv(a))
            sets.append(frozenset(s))
        return cls(family, tuple(sets))

    @classmethod
    def _trusted(cls, family: GroupFamily, sets: Tuple[FrozenSet[Any], ...]) -> "Cover":
        """sets 已知满足覆盖条件（星积的结果），跳过逐元素校验"""
        cover = object.__new__(cls)
        object.__setattr__(cover, "family", family)
        object.__setattr__(cover, "sets", sets)
        return cover

    @classmethod
    def identity_cover(cls, family: GroupFamily) -> "Cover":
        return cls(family, tuple(frozenset([g.identity()]) for g in family))

    def sizes(self) -> List[int]:
        return [len(s) for s in self.sets]

    def is_bounded_by(self, bound: BoundFunction) -> bool:
        """|c(n)| ≤ f(n) 对窗口内每个 n 成立"""
        return all(len(s) <= bound(n) for n, s in enumerate(self.sets))

    def covers(self, g: Sequence[Any]) -> bool:
        return covers(self, g)

    def sort_key(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(tuple(sorted(grp.format(a) for a in s)) for grp, s in zip(self.family, self.sets))

    def to_json(self) -> List[List[str]]:
        return [list(keys) for keys in self.sort_key()]

    def __mul__(self, other: "Cover") -> "Cover":
        return star(self, other)


def covers(c: Cover, g: Sequence[Any]) -> bool:
    """
    Raises:
        ShapeMismatch: g 的长度与窗口不一致
    """
    if len(g) != len(c.family):
        raise ShapeMismatch(details={"window": len(c.family), "tuple": len(g)})
    return all(x in s for x, s in zip(g, c.sets))


def star(c1: Cover, c2: Cover) -> Cover:
    if c1.family != c2.family:
        raise ShapeMismatch("covers live over different windows", details={
            "left": c1.family.describe(),
            "right": c2.family.describe(),
        })
    sets = tuple(index_product(group, left, right) for group, left, right in zip(c1.family, c1.sets, c2.sets))
    return Cover._trusted(c1.family, sets)


@cached(LRUCache(maxsize=8192), lock=threading.Lock())
def index_product(group: FiniteGroup, left: FrozenSet[Any], right: FrozenSet[Any]) -> FrozenSet[Any]:
    """单个下标上的 {ab, (ab)⁻¹ | a ∈ left, b ∈ right}，按 (group, left, right) 缓存"""
    out = set()
    for a, b in product(left, right):
        ab = group.mul(a, b)
        out.add(ab)
        out.add(group.inv(ab))
    return frozenset(out)


def star_size_bound(c1: Cover, c2: Cover) -> List[int]:
    return [2 * len(a) * len(b) for a, b in zip(c1.sets, c2.sets)]


def random_cover(
    family: GroupFamily,
    rng: random.Random,
    generators: int = 1,
    bound: Optional[BoundFunction] = None,
) -> Cover:
    """
    每个下标随机取若干生成元，数目受 f 约束，使结果是 f-覆盖
    """
    f = bound or BoundFunction()
    gens = []
    for n, group in enumerate(family):
        k = min(generators, (f(n) - 1) // 2)
        gens.append([group.random_element(rng) for _ in range(k)])
    return Cover.from_generators(family, gens)


def default_window(size: int, bound: Optional[BoundFunction] = None) -> GroupFamily:
    """
    对称群窗口：第 n 个群取满足 |Sym(m)| > 2^n · f(n)^(n+1) 的最小 m（m ≥ 4）

    f 缺省为 2^(n+2) 时前六项为 Sym(4), Sym(6), Sym(8), Sym(11), Sym(14), Sym(17)。
    """
    f = bound or BoundFunction()
    degrees = []
    for n in range(size):
        m = 4
        while math.factorial(m) <= f.hypothesis(n):
            m += 1
        degrees.append(m)
    return GroupFamily(tuple(SymmetricGroup(m) for m in degrees))


def find_nonassociative_triple(family: GroupFamily) -> Optional[Tuple[Cover, Cover, Cover]]:
    """
    在单生成元覆盖 {1, g, g⁻¹} 中穷举 (c, d, e)，返回第一个 (c*d)*e ≠ c*(d*e) 的三元组

    只对窗口中的第一个群取非平凡生成元，其余下标取单位覆盖。
    """
    head = family[0]
    rest = [[] for _ in range(len(family) - 1)]
    candidates: List[Cover] = []
    seen = set()
    for g in head.elements():
        c = Cover.from_generators(family, [[g]] + rest)
        if c not in seen:
            seen.add(c)
            candidates.append(c)
    for c, d, e in product(candidates, repeat=3):
        if star(star(c, d), e) != star(c, star(d, e)):
            logger.info(f"🔄 找到非结合三元组，规模 {c.sizes()[0]}/{d.sizes()[0]}/{e.sizes()[0]}")
            return c, d, e
    return None


# === 覆盖文件 ===

def cover_from_json(family: GroupFamily, sets: Sequence[Sequence[str]]) -> Cover:
    if len(sets) != len(family):
        raise ShapeMismatch(details={"window": len(family), "sets": len(sets)})
    parsed = [[group.parse(text) for text in texts] for group, texts in zip(family, sets)]
    return Cover(family, tuple(frozenset(s) for s in parsed))


def load_covers(path: Path) -> Tuple[GroupFamily, List[Cover], Optional[BoundFunction]]:
    """
    读取覆盖文件

    格式：{"window": [...], "sets": [[...]]} 表示单个覆盖，
    {"window": [...], "covers": [[[...]], ...]} 表示覆盖列表；
    可选 "bound": {"base": 2, "offset": 2}。
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read cover file {path}", cause=e)
    if not isinstance(data, dict) or "window" not in data:
        raise ParseError(f"cover file {path} lacks a window")
    family = GroupFamily.parse(data["window"])
    if "sets" in data:
        raw = [data["sets"]]
    elif "covers" in data:
        raw = data["covers"]
    else:
        raise ParseError(f"cover file {path} has neither sets nor covers")
    bound = BoundFunction(**data["bound"]) if "bound" in data else None
    result = [cover_from_json(family, sets) for sets in raw]
    logger.debug(f"📂 读取覆盖文件 {path}: {len(result)} 个覆盖")
    return family, result, bound


def covers_to_dict(family: GroupFamily, items: Sequence[Cover], bound: Optional[BoundFunction] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {"window": family.describe()}
    if len(items) == 1:
        data["sets"] = items[0].to_json()
    else:
        data["covers"] = [c.to_json() for c in items]
    if bound is not None:
        data["bound"] = {"base": bound.base, "offset": bound.offset}
    return data


def save_covers(path: Path, family: GroupFamily, items: Sequence[Cover], bound: Optional[BoundFunction] = None) -> None:
    text = json.dumps(covers_to_dict(family, items, bound), ensure_ascii=False, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


__all__ = [
    "BoundFunction",
    "Cover",
    "covers",
    "star",
    "star_size_bound",
    "random_cover",
    "default_window",
    "find_nonassociative_triple",
    "cover_from_json",
    "load_covers",
    "covers_to_dict",
    "save_covers",
]
