"""
统一配置中心

将工作台的所有可调上限集中管理，提供：
1. 单一配置入口点
2. 环境变量映射（支持 .env）
3. 配置验证
4. 重新加载（测试中切换配置）

使用方式：
    from src.core.settings import settings

    # 访问有限域配置
    print(settings.finite_field.max_order)

    # 访问运行配置
    print(settings.run.profile, settings.run.seed)

    # 检查配置是否有效
    errors = settings.validate()
"""

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, List, Dict, Any


# === 辅助函数 ===

_TRUE_VALUES = frozenset({"1", "true", "yes", "on"})

PROFILES = ("quick", "full", "big")


def _env(key: str, default: str = "") -> str:
    """获取环境变量"""
    return os.getenv(key, default)


def _env_bool(key: str, default: bool = False) -> bool:
    """获取布尔环境变量"""
    value = os.getenv(key)
    if value is None:
        return default
    return value.strip().lower() in _TRUE_VALUES


def _env_int(key: str, default: int, min_val: Optional[int] = None, max_val: Optional[int] = None) -> int:
    """获取整数环境变量"""
    value = os.getenv(key)
    if value is None:
        return default
    try:
        result = int(value.strip())
        if min_val is not None:
            result = max(result, min_val)
        if max_val is not None:
            result = min(result, max_val)
        return result
    except ValueError:
        return default


# === 配置数据类 ===

@dataclass(frozen=True)
class FieldConfig:
    """有限域配置"""
    max_order: int = 1 << 20
    table_max_order: int = 1024  # 不超过此阶的域使用 numpy 运算表


@dataclass(frozen=True)
class PermutationConfig:
    """置换群配置"""
    max_degree: int = 16
    brenner_table_cap: int = 1000  # C·C 哈希表允许的最大 |C|
    search_retry_cap: int = 20000


@dataclass(frozen=True)
class MatrixConfig:
    """矩阵群配置"""
    bfs_max_keys: int = 1 << 26
    bfs_chunk_size: int = 256
    bfs_sample_size: int = 16


@dataclass(frozen=True)
class CoverConfig:
    """覆盖代数配置"""
    window: int = 6
    closure_max_covers: int = 200000


@dataclass(frozen=True)
class RunConfig:
    """运行配置"""
    profile: str = "quick"
    seed: int = 20240101
    include_timing: bool = False


@dataclass(frozen=True)
class LoggingConfig:
    """日志配置"""
    level: str = "INFO"
    file: Optional[Path] = None
    structured: bool = False
    console: bool = True


# === 主配置类 ===

@dataclass
class Settings:
    """
    工作台配置

    四个代数分区各管自己的计算上限，run 决定配置档与随机种子。
    """

    # 代数结构配置
    finite_field: FieldConfig = field(default_factory=FieldConfig)
    permutation: PermutationConfig = field(default_factory=PermutationConfig)
    matrix: MatrixConfig = field(default_factory=MatrixConfig)
    cover: CoverConfig = field(default_factory=CoverConfig)

    # 运行与日志
    run: RunConfig = field(default_factory=RunConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    def validate(self) -> List[str]:
        """
        验证配置

        Returns:
            错误消息列表，空列表表示配置有效
        """
        errors = []

        caps = [
            ("field.max_order", self.finite_field.max_order),
            ("field.table_max_order", self.finite_field.table_max_order),
            ("permutation.max_degree", self.permutation.max_degree),
            ("permutation.brenner_table_cap", self.permutation.brenner_table_cap),
            ("permutation.search_retry_cap", self.permutation.search_retry_cap),
            ("matrix.bfs_max_keys", self.matrix.bfs_max_keys),
            ("matrix.bfs_chunk_size", self.matrix.bfs_chunk_size),
            ("matrix.bfs_sample_size", self.matrix.bfs_sample_size),
            ("cover.window", self.cover.window),
            ("cover.closure_max_covers", self.cover.closure_max_covers),
        ]
        for name, value in caps:
            if value < 1:
                errors.append(f"{name} 必须为正整数，当前值: {value}")

        if self.finite_field.table_max_order > self.finite_field.max_order:
            errors.append("field.table_max_order 不能超过 field.max_order")

        if self.run.profile not in PROFILES:
            errors.append(f"run.profile 必须是 {'/'.join(PROFILES)} 之一，当前值: {self.run.profile}")

        return errors

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "field": {
                "max_order": self.finite_field.max_order,
                "table_max_order": self.finite_field.table_max_order,
            },
            "permutation": {
                "max_degree": self.permutation.max_degree,
                "brenner_table_cap": self.permutation.brenner_table_cap,
                "search_retry_cap": self.permutation.search_retry_cap,
            },
            "matrix": {
                "bfs_max_keys": self.matrix.bfs_max_keys,
                "bfs_chunk_size": self.matrix.bfs_chunk_size,
                "bfs_sample_size": self.matrix.bfs_sample_size,
            },
            "cover": {
                "window": self.cover.window,
                "closure_max_covers": self.cover.closure_max_covers,
            },
            "run": {
                "profile": self.run.profile,
                "seed": self.run.seed,
                "include_timing": self.run.include_timing,
            },
            "logging": {
                "level": self.logging.level,
                "structured": self.logging.structured,
            },
        }


# === 配置加载 ===

def _load_settings() -> Settings:
    """从环境变量加载配置"""
    from dotenv import load_dotenv
    load_dotenv()

    base_dir = Path(__file__).resolve().parents[2]

    # 处理日志文件路径
    log_file = _env("LOG_FILE")
    log_path = None
    if log_file:
        log_path = Path(log_file)
        if not log_path.is_absolute():
            log_path = base_dir / log_path

    return Settings(
        finite_field=FieldConfig(
            max_order=_env_int("FIELD_MAX_ORDER", 1 << 20, min_val=2),
            table_max_order=_env_int("FIELD_TABLE_MAX_ORDER", 1024, min_val=2),
        ),
        permutation=PermutationConfig(
            max_degree=_env_int("PERM_MAX_DEGREE", 16, min_val=4),
            brenner_table_cap=_env_int("BRENNER_TABLE_CAP", 1000, min_val=1),
            search_retry_cap=_env_int("SEARCH_RETRY_CAP", 20000, min_val=1),
        ),
        matrix=MatrixConfig(
            bfs_max_keys=_env_int("BFS_MAX_KEYS", 1 << 26, min_val=1),
            bfs_chunk_size=_env_int("BFS_CHUNK_SIZE", 256, min_val=1),
            bfs_sample_size=_env_int("BFS_SAMPLE_SIZE", 16, min_val=1),
        ),
        cover=CoverConfig(
            window=_env_int("COVER_WINDOW", 6, min_val=1),
            closure_max_covers=_env_int("CLOSURE_MAX_COVERS", 200000, min_val=1),
        ),
        run=RunConfig(
            profile=_env("RUN_PROFILE", "quick").strip().lower(),
            seed=_env_int("RUN_SEED", 20240101),
            include_timing=_env_bool("REPORT_INCLUDE_TIMING", False),
        ),
        logging=LoggingConfig(
            level=_env("LOG_LEVEL", "INFO").upper(),
            file=log_path,
            structured=_env_bool("LOG_STRUCTURED", False),
            console=_env_bool("LOG_CONSOLE", True),
        ),
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    获取配置单例

    使用 lru_cache 确保只加载一次配置
    """
    return _load_settings()


def reload_settings() -> Settings:
    """
    重新加载配置

    清除缓存并重新从环境变量加载
    """
    get_settings.cache_clear()
    return get_settings()


# 全局配置实例
settings = get_settings()


__all__ = [
    # 配置类
    "Settings",
    "FieldConfig",
    "PermutationConfig",
    "MatrixConfig",
    "CoverConfig",
    "RunConfig",
    "LoggingConfig",
    "PROFILES",
    # 函数
    "get_settings",
    "reload_settings",
    # 实例
    "settings",
]
