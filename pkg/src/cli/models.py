"""
命令行数据模型

RunParams 汇总命令参数与运行配置；Report 为所有子命令的统一输出，
序列化时键排序、无时间戳，固定配置与种子下逐字节稳定。
"""

import json
import re
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from src.core.exceptions import ParseError
from src.core.settings import PROFILES

_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


class IntRange(BaseModel):
    """闭区间 a..b，单个整数视为 a..a"""
    start: int = Field(..., ge=0)
    stop: int = Field(..., ge=0)

    @classmethod
    def parse(cls, text: str) -> "IntRange":
        match = _RANGE.match(str(text))
        if match is None:
            raise ParseError(f"bad range: {text!r}", details={"expected": "a or a..b"})
        start = int(match.group(1))
        stop = int(match.group(2)) if match.group(2) is not None else start
        if stop < start:
            raise ParseError(f"empty range: {text!r}")
        return cls(start=start, stop=stop)

    def values(self) -> List[int]:
        return list(range(self.start, self.stop + 1))

    def __str__(self) -> str:
        return str(self.start) if self.start == self.stop else f"{self.start}..{self.stop}"


class RunParams(BaseModel):
    """命令参数"""
    m: Optional[IntRange] = Field(None, description="uni1 的 m")
    n: Optional[IntRange] = Field(None, description="n（4n、8n 点或 4n 维）")
    d: Optional[IntRange] = Field(None, description="维数")
    q: Optional[IntRange] = Field(None, description="域的阶")
    bound: int = Field(5, ge=1, description="覆盖半径上界")
    depth: int = Field(3, ge=0, description="闭包深度")
    seed: int = Field(20240101, description="随机种子")
    profile: str = Field("quick", description="运行配置档")

    @field_validator("profile")
    @classmethod
    def _known_profile(cls, value: str) -> str:
        if value not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}")
        return value

    def single(self, name: str) -> int:
        """取单值参数；缺失或为区间时抛出 ParseError"""
        value = getattr(self, name)
        if value is None:
            raise ParseError(f"--{name} is required")
        if value.start != value.stop:
            raise ParseError(f"--{name} must be a single value here, got {value}")
        return value.start

    def values(self, name: str) -> List[int]:
        value = getattr(self, name)
        if value is None:
            raise ParseError(f"--{name} is required")
        return value.values()

    def echo(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for name in ("m", "n", "d", "q"):
            value = getattr(self, name)
            if value is not None:
                out[name] = str(value)
        out.update(bound=self.bound, depth=self.depth, seed=self.seed, profile=self.profile)
        return out


class CaseResult(BaseModel):
    """单个目标或单组参数的结果"""
    target: str
    valid: bool
    witness: Optional[Dict[str, Any]] = None
    value: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None
    elapsed_ms: Optional[float] = None


class Summary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0


class Report(BaseModel):
    """子命令输出"""
    command: Dict[str, Any]
    cases: List[CaseResult] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)
    first_failure: Optional[CaseResult] = None

    def add(self, case: CaseResult) -> None:
        self.cases.append(case)
        self.summary.total += 1
        if case.valid:
            self.summary.passed += 1
        else:
            self.summary.failed += 1
            if self.first_failure is None:
                self.first_failure = case

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0

    def to_json(self) -> str:
        return json.dumps(self.model_dump(exclude_none=True), ensure_ascii=False, indent=2, sort_keys=True)


__all__ = ["IntRange", "RunParams", "CaseResult", "Summary", "Report"]
