"""
逃逸元素

对闭包按层序排出 d_0, d_1, ...，在下标 n 取 g(n) 为 G_n 中不属于 d_n(n) 的字典序最小元素。
窗口有限，最后一个下标承担剩余全部覆盖：g(N-1) 取不属于任何尚未被逃逸的覆盖在 N-1 处集合之并的最小元素。

对角下标 n 需满足 |G_n| > 2^n · f(n)^(n+1)，否则抛出 HypothesisViolated。
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core.exceptions import HypothesisViolated, InvalidCover
from src.core.logging_setup import get_logger, log_with_context
from src.covers.closure import BoundedClosure
from src.covers.cover import BoundFunction, Cover
from src.covers.groups import GroupFamily

logger = get_logger(__name__)


@dataclass
class EscapeReport:
    family: GroupFamily
    g: Tuple[Any, ...]
    depth: int
    checked_covers: int
    escaped: bool
    diagonal: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.family.format_tuple(self.g),
            "depth": self.depth,
            "checked_covers": self.checked_covers,
            "escaped": self.escaped,
        }


def check_hypothesis(family: GroupFamily, bound: BoundFunction, indices: Sequence[int]) -> None:
    for n in indices:
        group = family[n]
        needed = bound.hypothesis(n)
        if group.order <= needed:
            raise HypothesisViolated(
                f"|{group}| = {group.order} does not exceed {needed} at index {n}",
                details={"index": n, "group": group.descriptor, "order": group.order, "needed": needed},
            )


def escape_element(
    base: Sequence[Cover],
    depth: int,
    bound: Optional[BoundFunction] = None,
) -> EscapeReport:
    """
    构造不被深度 depth 的闭包中任何覆盖所覆盖的 g，并逐个复核

    Raises:
        InvalidCover: 输入不是 f-覆盖
        HypothesisViolated: 某个对角下标的群太小，或最后一个下标已被占满
    """
    f = bound or BoundFunction()
    for i, c in enumerate(base):
        if not c.is_bounded_by(f):
            raise InvalidCover(
                f"cover {i} is not a {f.describe()}-cover",
                details={"index": i, "sizes": c.sizes()},
            )
    closure = BoundedClosure(base, depth)
    schedule = closure.materialize()
    family = closure.family
    window = len(family)
    diagonal = list(range(min(window, len(schedule))))
    check_hypothesis(family, f, diagonal)

    g: List[Any] = []
    alive = list(schedule)
    for n in range(window):
        group = family[n]
        if n == window - 1:
            excluded = set().union(*(c.sets[n] for c in alive)) if alive else set()
        elif n < len(schedule):
            excluded = schedule[n].sets[n]
        else:
            excluded = set()
        choice = group.least_outside(excluded)
        if choice is None:
            raise HypothesisViolated(
                f"index {n} of {group} is exhausted by the schedule",
                details={"index": n, "group": group.descriptor, "excluded": len(excluded)},
            )
        g.append(choice)
        alive = [c for c in alive if choice in c.sets[n]]

    g_tuple = tuple(g)
    covered = [c for c in schedule if c.covers(g_tuple)]
    report = EscapeReport(
        family=family,
        g=g_tuple,
        depth=depth,
        checked_covers=len(schedule),
        escaped=not covered,
        diagonal=diagonal,
    )
    log_with_context(
        logger, logging.INFO, "✅ 逃逸元素已构造" if report.escaped else "⚠️ 逃逸元素仍被覆盖",
        depth=depth, checked=len(schedule), window=window,
    )
    return report


__all__ = ["EscapeReport", "escape_element", "check_hypothesis"]
