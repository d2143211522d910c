"""
工作台日志配置

- 控制台写 stderr，stdout 只留给报告 JSON
- 文件按大小轮转，LOG_STRUCTURED=true 时每行一条 JSON
- log_with_context 的上下文字段（lemma、target、m …）在两种输出里都保留
"""

import json
import logging
import sys
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional

from src.core.settings import get_settings


BASE_DIR = Path(__file__).resolve().parents[2]
DEFAULT_LOG_FILE = BASE_DIR / "log" / "workbench.log"

LINE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s%(context)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

ROTATE_BYTES = 10 * 1024 * 1024
ROTATE_KEEP = 5

# LogRecord 自带的属性，其余都是调用方传入的上下文
_BUILTIN_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {"message", "asctime", "context"}


def _context_of(record: logging.LogRecord) -> Dict[str, Any]:
    return {k: v for k, v in vars(record).items() if k not in _BUILTIN_ATTRS}


class ContextFilter(logging.Filter):
    """把上下文字段渲染成 ` [k=v ...]` 后缀，供文本格式使用"""

    def filter(self, record: logging.LogRecord) -> bool:
        ctx = _context_of(record)
        record.context = " [" + " ".join(f"{k}={v}" for k, v in ctx.items()) + "]" if ctx else ""
        return True


class StructuredFormatter(logging.Formatter):
    """每条记录一行 JSON；上下文放在 context 下"""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "ts": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        ctx = _context_of(record)
        if ctx:
            entry["context"] = ctx
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


class ColoredFormatter(logging.Formatter):
    """终端上按级别着色"""

    COLORS = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
        logging.CRITICAL: "\033[41m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelno)
        if not color:
            return super().format(record)
        plain = record.levelname
        record.levelname = f"{color}{plain}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = plain


def _file_handler(path: Path, structured: bool) -> Optional[logging.Handler]:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(str(path), encoding="utf-8", maxBytes=ROTATE_BYTES, backupCount=ROTATE_KEEP)
    except OSError as e:
        sys.stderr.write(f"⚠️ 日志文件不可写，仅输出到控制台: {path} ({e})\n")
        return None
    handler.setFormatter(StructuredFormatter() if structured else logging.Formatter(LINE_FORMAT, DATE_FORMAT))
    return handler


def _configure_logging() -> None:
    """
    按 settings.logging 配置根日志器；已有处理器时不再重复配置

    控制台只显示 WARNING 及以上，完整记录写入文件。
    """
    root = logging.getLogger()
    if root.handlers:
        return

    config = get_settings().logging
    level = logging.getLevelName(config.level.upper())
    if not isinstance(level, int):
        level = logging.INFO
    root.setLevel(level)

    handlers = []
    file_handler = _file_handler(Path(config.file or DEFAULT_LOG_FILE), config.structured)
    if file_handler is not None:
        file_handler.setLevel(level)
        handlers.append(file_handler)

    if config.console:
        console = logging.StreamHandler(sys.stderr)
        formatter_cls = ColoredFormatter if sys.stderr.isatty() else logging.Formatter
        console.setFormatter(formatter_cls(LINE_FORMAT, DATE_FORMAT))
        console.setLevel(max(level, logging.WARNING))
        handlers.append(console)

    for handler in handlers:
        handler.addFilter(ContextFilter())
        root.addHandler(handler)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """确保日志已配置，返回指定名字的 logger"""
    _configure_logging()
    return logging.getLogger(name or "src.workbench")


def log_with_context(logger: logging.Logger, level: int, message: str, **context) -> None:
    """
    带上下文字段记录日志

    Usage:
        log_with_context(logger, logging.INFO, "✅ 分解完成", lemma="uni1", target="(1 2 3)")
    """
    logger.log(level, message, extra=context)


logger = get_logger("src.workbench")


__all__ = [
    "logger",
    "get_logger",
    "log_with_context",
    "ContextFilter",
    "StructuredFormatter",
    "ColoredFormatter",
    "DEFAULT_LOG_FILE",
]
