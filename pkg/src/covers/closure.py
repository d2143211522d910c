"""
有界闭包

从覆盖列表 C 出发，枚举星号个数不超过 depth 的全部 *-表达式的值。
第 k 层是恰含 k 个星号的表达式的值（层内按值去重），
由 star(x, y)（x 取第 i 层，y 取第 k-1-i 层）得到；输出按
"层号、左子式层号、左右子式在各自层中的位置" 排序，并在层间按值去重。

前 depth 层物化保存，顶层只在需要时惰性计算。
"""

from typing import Any, Iterator, List, Optional, Sequence

from src.core.exceptions import DepthExplosion, ShapeMismatch, ValidationError
from src.core.logging_setup import get_logger
from src.core.settings import get_settings
from src.covers.cover import Cover, star

logger = get_logger(__name__)


class BoundedClosure:
    """
    深度受限的 *-闭包

    Args:
        base: 初始覆盖列表（同一窗口）
        depth: 星号个数上限
        max_covers: 物化覆盖总数上限，缺省取 CLOSURE_MAX_COVERS
    """

    def __init__(self, base: Sequence[Cover], depth: int, max_covers: Optional[int] = None):
        if not base:
            raise ValidationError("closure needs at least one cover")
        if depth < 0:
            raise ValidationError(f"depth must be non-negative, got {depth}")
        family = base[0].family
        if any(c.family != family for c in base):
            raise ShapeMismatch("covers live over different windows")
        self.family = family
        self.depth = depth
        self.max_covers = max_covers or get_settings().cover.closure_max_covers
        self._levels: List[List[Cover]] = [self._dedupe(base)]
        self._count = len(self._levels[0])
        for k in range(1, depth):
            self._levels.append(self._dedupe(self._products(k)))
            self._count += len(self._levels[k])
            self._check_cap()
        logger.debug(f"🔄 闭包已物化 {len(self._levels)} 层，共 {self._count} 个覆盖")

    @staticmethod
    def _dedupe(items) -> List[Cover]:
        seen, out = set(), []
        for c in items:
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out

    def _check_cap(self) -> None:
        if self._count > self.max_covers:
            raise DepthExplosion(details={"depth": self.depth, "covers": self._count, "cap": self.max_covers})

    def _products(self, k: int) -> Iterator[Cover]:
        """恰含 k 个星号的表达式，按左子式层号、位置顺序"""
        for i in range(k):
            for left in self._levels[i]:
                for right in self._levels[k - 1 - i]:
                    yield star(left, right)

    def stored_levels(self) -> List[List[Cover]]:
        return [list(level) for level in self._levels]

    def schedule(self) -> Iterator[Cover]:
        """按层序逐个给出闭包中的不同覆盖（顶层惰性计算）"""
        seen = set()
        for level in self._levels:
            for c in level:
                if c not in seen:
                    seen.add(c)
                    yield c
        if self.depth == 0:
            return
        count = len(seen)
        for c in self._products(self.depth):
            if c not in seen:
                seen.add(c)
                count += 1
                if count > self.max_covers:
                    raise DepthExplosion(details={"depth": self.depth, "covers": count, "cap": self.max_covers})
                yield c

    def materialize(self) -> List[Cover]:
        return list(self.schedule())

    def contains(self, g: Sequence[Any]) -> bool:
        """闭包中是否存在覆盖 g 的覆盖；在顶层找到后立即停止"""
        for level in self._levels:
            if any(c.covers(g) for c in level):
                return True
        if self.depth == 0:
            return False
        return any(c.covers(g) for c in self._products(self.depth))


def closure_enumerate(base: Sequence[Cover], depth: int) -> List[Cover]:
    """
    Raises:
        DepthExplosion: 覆盖数超过上限
    """
    return BoundedClosure(base, depth).materialize()


def covered_subgroup_contains(base: Sequence[Cover], depth: int, g: Sequence[Any]) -> bool:
    return BoundedClosure(base, depth).contains(g)


__all__ = ["BoundedClosure", "closure_enumerate", "covered_subgroup_contains"]
