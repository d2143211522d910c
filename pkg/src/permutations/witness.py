"""
分解见证

见证 = 目标元素 + 有序字母表 [(元素, 来源标签)]。
字母按合成约定依次相乘必须等于目标，每个字母必须满足其标签的成员谓词。
置换与矩阵共用此结构：元素只需支持 `*`、`==` 与 `identity_like()`。
"""

from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from src.core.exceptions import WitnessInvalid
from src.core.logging_setup import get_logger
from src.core.metrics import metrics

logger = get_logger(__name__)

Predicate = Callable[[Any], bool]


@dataclass(frozen=True)
class Letter:
    """见证中的一个字母"""
    element: Any
    tag: str


@dataclass
class FactorizationWitness:
    """有序字母表及其目标元素"""

    target: Any
    letters: List[Letter] = field(default_factory=list)

    @classmethod
    def from_pairs(cls, target: Any, pairs: Sequence[Tuple[Any, str]]) -> "FactorizationWitness":
        return cls(target=target, letters=[Letter(e, t) for e, t in pairs])

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def tags(self) -> List[str]:
        return [letter.tag for letter in self.letters]

    @property
    def elements(self) -> List[Any]:
        return [letter.element for letter in self.letters]

    def product(self) -> Any:
        """按顺序相乘；空字母表的积为单位元"""
        return reduce(lambda acc, e: acc * e, self.elements, self.target.identity_like())

    def failures(self, predicates: Mapping[str, Predicate]) -> List[str]:
        """返回所有不满足之处的描述，空列表表示见证有效"""
        problems = []
        for i, letter in enumerate(self.letters):
            check = predicates.get(letter.tag)
            if check is None:
                problems.append(f"letter {i}: unknown tag {letter.tag!r}")
            elif not check(letter.element):
                problems.append(f"letter {i}: fails predicate {letter.tag!r}")
        if self.product() != self.target:
            problems.append("product differs from target")
        return problems

    def is_valid(self, predicates: Mapping[str, Predicate]) -> bool:
        return not self.failures(predicates)

    def validate(self, predicates: Mapping[str, Predicate]) -> "FactorizationWitness":
        """
        重新相乘并检查每个字母的标签谓词

        Raises:
            WitnessInvalid: 积不等于目标或有字母不满足谓词
        """
        problems = self.failures(predicates)
        metrics.record_witness(not problems)
        if problems:
            logger.warning(f"⚠️ 见证验证失败: {problems[0]}")
            raise WitnessInvalid(
                details={"target": str(self.target), "problems": problems},
            )
        return self

    def map(self, fn: Callable[[Any], Any], target: Optional[Any] = None) -> "FactorizationWitness":
        """逐字母变换（如共轭），标签不变"""
        return FactorizationWitness(
            target=fn(self.target) if target is None else target,
            letters=[Letter(fn(l.element), l.tag) for l in self.letters],
        )

    def to_json(self, format_element: Callable[[Any], str] = str) -> Dict[str, Any]:
        return {
            "target": format_element(self.target),
            "letters": [{"letter": format_element(l.element), "tag": l.tag} for l in self.letters],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], parse_element: Callable[[str], Any]) -> "FactorizationWitness":
        return cls(
            target=parse_element(data["target"]),
            letters=[Letter(parse_element(item["letter"]), item["tag"]) for item in data["letters"]],
        )


__all__ = ["Letter", "FactorizationWitness", "Predicate"]
