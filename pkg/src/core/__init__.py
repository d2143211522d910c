"""
核心模块

提供：
1. 统一配置中心
2. 统一异常处理
3. 错误码定义
4. 日志配置
5. 性能指标收集
"""

from src.core.exceptions import (
    AppError,
    ErrorCode,
    ValidationError,
    ConfigurationError,
    ParseError,
)

from src.core.logging_setup import (
    logger,
    get_logger,
    log_with_context,
)

from src.core.metrics import (
    MetricsCollector,
    metrics,
    get_metrics_collector,
)

from src.core.settings import (
    Settings,
    settings,
    get_settings,
    reload_settings,
)

__all__ = [
    # 配置
    "Settings",
    "settings",
    "get_settings",
    "reload_settings",

    # 异常
    "AppError",
    "ErrorCode",
    "ValidationError",
    "ConfigurationError",
    "ParseError",

    # 日志
    "logger",
    "get_logger",
    "log_with_context",

    # 指标
    "MetricsCollector",
    "metrics",
    "get_metrics_collector",
]
