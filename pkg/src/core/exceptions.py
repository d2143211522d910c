"""
统一异常处理模块

提供：
1. 错误码枚举
2. 基础应用异常
3. 各领域异常（有限域 / 置换 / 矩阵 / 形式 / 覆盖 / 命令行）

每个异常带有 exit_code，命令行据此决定进程退出码：
0 成功，1 验证失败，2 用法/解析错误，3 上限/假设不满足。
"""

from enum import Enum
from typing import Optional, Any, Dict


class ErrorCode(Enum):
    """错误码枚举"""

    # 通用错误 (1000-1999)
    UNKNOWN = 1000
    VALIDATION_ERROR = 1001
    CONFIGURATION_ERROR = 1002
    PARSE_ERROR = 1003

    # 有限域错误 (2000-2999)
    NON_PRIME = 2000
    DEGREE_TOO_LARGE = 2001
    NO_ZSIGMONDY = 2002
    FIELD_MISMATCH = 2003
    DIVISION_BY_ZERO = 2004

    # 置换错误 (3000-3999)
    DEGREE_MISMATCH = 3000
    NOT_EVEN = 3001
    SEARCH_EXHAUSTED = 3002
    TAIL_REGIME = 3003

    # 矩阵群错误 (4000-4999)
    SINGULAR = 4000
    DIMENSION_TOO_SMALL = 4001
    NO_SPLIT = 4002
    GROUP_TOO_LARGE = 4003
    BOUND_EXCEEDED = 4004
    DIMENSION_MISMATCH = 4005

    # 形式空间错误 (5000-5999)
    ZERO_LAMBDA = 5000
    ODD_WEIGHT = 5001
    NOT_IN_L = 5002
    DEPENDENT_PAIR = 5003

    # 覆盖代数错误 (6000-6999)
    SHAPE_MISMATCH = 6000
    DEPTH_EXPLOSION = 6001
    HYPOTHESIS_VIOLATED = 6002
    INVALID_COVER = 6003

    # 命令行错误 (7000-7999)
    LEMMA_UNKNOWN = 7000
    CAP_EXCEEDED = 7001
    WITNESS_INVALID = 7002


class AppError(Exception):
    """应用基础异常类"""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: ErrorCode = ErrorCode.UNKNOWN,
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        self.cause = cause

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "error": self.error_code.name,
            "code": self.error_code.value,
            "message": self.message,
            "details": self.details
        }

    def __str__(self) -> str:
        return f"[{self.error_code.name}] {self.message}"


def _domain_error(name: str, code: ErrorCode, default_message: str, doc: str, exit_code: int = 1) -> type:
    """按统一构造签名生成领域异常类"""

    def __init__(
        self,
        message: str = default_message,
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None
    ):
        AppError.__init__(self, message=message, error_code=code, details=details, cause=cause)

    return type(name, (AppError,), {"__init__": __init__, "__doc__": doc, "exit_code": exit_code})


# === 通用 ===

class ValidationError(AppError):
    """验证错误"""

    def __init__(
        self,
        message: str = "Validation failed",
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.VALIDATION_ERROR,
            details=details,
            cause=cause
        )


class ConfigurationError(AppError):
    """配置错误"""

    def __init__(
        self,
        message: str = "Configuration error",
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.CONFIGURATION_ERROR,
            details=details,
            cause=cause
        )


class ParseError(AppError):
    """文本格式解析错误"""

    exit_code = 2

    def __init__(
        self,
        message: str = "Malformed input",
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.PARSE_ERROR,
            details=details,
            cause=cause
        )


# === 有限域 ===

NonPrime = _domain_error("NonPrime", ErrorCode.NON_PRIME, "Characteristic is not prime", "特征不是素数")
DegreeTooLarge = _domain_error(
    "DegreeTooLarge", ErrorCode.DEGREE_TOO_LARGE, "Field order exceeds the configured bound", "域阶超过配置上限"
)
NoZsigmondy = _domain_error(
    "NoZsigmondy", ErrorCode.NO_ZSIGMONDY, "No primitive prime divisor exists", "不存在本原素因子"
)
FieldMismatch = _domain_error(
    "FieldMismatch", ErrorCode.FIELD_MISMATCH, "Operands live in different fields", "运算对象不在同一个域"
)
DivisionByZero = _domain_error(
    "DivisionByZero", ErrorCode.DIVISION_BY_ZERO, "Zero has no inverse", "零元素不可逆"
)

# === 置换 ===

DegreeMismatch = _domain_error(
    "DegreeMismatch", ErrorCode.DEGREE_MISMATCH, "Permutation degrees differ", "置换次数不一致"
)
NotEven = _domain_error("NotEven", ErrorCode.NOT_EVEN, "Permutation is odd", "置换不是偶置换")
SearchExhausted = _domain_error(
    "SearchExhausted", ErrorCode.SEARCH_EXHAUSTED, "Search retry cap reached", "搜索次数达到上限"
)
TailRegime = _domain_error(
    "TailRegime", ErrorCode.TAIL_REGIME, "Sequence is already in the tail regime", "序列已进入尾部区间"
)

# === 矩阵群 ===

Singular = _domain_error("Singular", ErrorCode.SINGULAR, "Matrix is singular", "矩阵奇异")
DimensionTooSmall = _domain_error(
    "DimensionTooSmall", ErrorCode.DIMENSION_TOO_SMALL, "Dimension below the supported minimum", "维数过小"
)
NoSplit = _domain_error(
    "NoSplit", ErrorCode.NO_SPLIT, "Matrix is not a sum of two invertible matrices", "无法拆分为两个可逆矩阵之和"
)
GroupTooLarge = _domain_error(
    "GroupTooLarge", ErrorCode.GROUP_TOO_LARGE, "Group exceeds the enumeration cap", "群超出枚举上限", exit_code=3
)
BoundExceeded = _domain_error(
    "BoundExceeded", ErrorCode.BOUND_EXCEEDED, "Covering distance exceeds the bound", "覆盖距离超过界"
)
DimensionMismatch = _domain_error(
    "DimensionMismatch", ErrorCode.DIMENSION_MISMATCH, "Dimensions do not match", "维数不匹配"
)

# === 形式空间 ===

ZeroLambda = _domain_error("ZeroLambda", ErrorCode.ZERO_LAMBDA, "Parameter must be nonzero", "参数必须非零")
OddWeight = _domain_error("OddWeight", ErrorCode.ODD_WEIGHT, "Vector has odd weight", "向量重量为奇数")
NotInL = _domain_error(
    "NotInL", ErrorCode.NOT_IN_L, "No t satisfies the norm equation", "不存在满足范数方程的 t"
)
DependentPair = _domain_error(
    "DependentPair", ErrorCode.DEPENDENT_PAIR, "Vectors are linearly dependent", "向量线性相关"
)

# === 覆盖代数 ===

ShapeMismatch = _domain_error(
    "ShapeMismatch", ErrorCode.SHAPE_MISMATCH, "Window shapes do not match", "窗口形状不一致"
)
DepthExplosion = _domain_error(
    "DepthExplosion", ErrorCode.DEPTH_EXPLOSION, "Closure exceeds the cover cap", "闭包规模超过上限", exit_code=3
)
HypothesisViolated = _domain_error(
    "HypothesisViolated", ErrorCode.HYPOTHESIS_VIOLATED, "Counting hypothesis fails", "计数假设不成立", exit_code=3
)
InvalidCover = _domain_error(
    "InvalidCover", ErrorCode.INVALID_COVER, "Sets violate the cover axioms", "集合不满足覆盖公理"
)

# === 命令行 ===

LemmaUnknown = _domain_error(
    "LemmaUnknown", ErrorCode.LEMMA_UNKNOWN, "Lemma id is not registered", "引理未注册", exit_code=2
)
CapExceeded = _domain_error(
    "CapExceeded", ErrorCode.CAP_EXCEEDED, "Range exceeds the profile caps", "范围超出配置上限", exit_code=3
)
WitnessInvalid = _domain_error(
    "WitnessInvalid", ErrorCode.WITNESS_INVALID, "Witness failed re-validation", "见证验证失败"
)


__all__ = [
    "ErrorCode",
    "AppError",
    "ValidationError",
    "ConfigurationError",
    "ParseError",
    "NonPrime",
    "DegreeTooLarge",
    "NoZsigmondy",
    "FieldMismatch",
    "DivisionByZero",
    "DegreeMismatch",
    "NotEven",
    "SearchExhausted",
    "TailRegime",
    "Singular",
    "DimensionTooSmall",
    "NoSplit",
    "GroupTooLarge",
    "BoundExceeded",
    "DimensionMismatch",
    "ZeroLambda",
    "OddWeight",
    "NotInL",
    "DependentPair",
    "ShapeMismatch",
    "DepthExplosion",
    "HypothesisViolated",
    "InvalidCover",
    "LemmaUnknown",
    "CapExceeded",
    "WitnessInvalid",
]
