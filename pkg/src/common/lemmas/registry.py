"""
引理注册表

从 config.yaml 加载引理定义，按 id 解析 factorize / verify 实现。
"""

import importlib
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import yaml

from src.core.exceptions import CapExceeded, ConfigurationError, LemmaUnknown
from src.core.logging_setup import get_logger

logger = get_logger(__name__)

ACTIONS = ("factorize", "verify")


@dataclass
class LemmaSpec:
    """引理定义"""
    id: str
    description: str
    target: str = "none"
    parameters: List[str] = field(default_factory=list)
    defaults: Dict[str, str] = field(default_factory=dict)
    factorize: Optional[Dict[str, str]] = None
    verify: Optional[Dict[str, str]] = None
    caps: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, lemma_id: str, data: Dict[str, Any]) -> "LemmaSpec":
        return cls(
            id=lemma_id,
            description=str(data.get("description", "")).strip(),
            target=data.get("target", "none"),
            parameters=list(data.get("parameters", [])),
            defaults={k: str(v) for k, v in (data.get("defaults") or {}).items()},
            factorize=data.get("factorize"),
            verify=data.get("verify"),
            caps=data.get("caps") or {},
        )

    def actions(self) -> List[str]:
        return [a for a in ACTIONS if getattr(self, a)]

    def limits(self, profile: str) -> Dict[str, int]:
        """当前配置档中除参数上限以外的条目（抽样规模等）"""
        caps = self.caps.get(profile, {})
        return {k: v for k, v in caps.items() if k not in self.parameters}

    def check_caps(self, profile: str, values: Dict[str, int]) -> None:
        """
        Raises:
            CapExceeded: 某个参数超过当前配置档的上限
        """
        caps = self.caps.get(profile, {})
        for name, value in values.items():
            cap = caps.get(name)
            if cap is not None and value > cap:
                raise CapExceeded(
                    f"--{name} {value} exceeds the {profile} cap {cap} for {self.id}",
                    details={"lemma": self.id, "parameter": name, "value": value, "cap": cap, "profile": profile},
                )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "description": self.description,
            "target": self.target,
            "parameters": self.parameters,
            "actions": self.actions(),
        }


class LemmaRegistry:
    """
    引理注册表

    线程安全的单例模式。
    """

    _instance: Optional["LemmaRegistry"] = None
    _lock = threading.Lock()

    def __new__(cls, config_path: Optional[Path] = None):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    instance = super().__new__(cls)
                    instance._initialized = False
                    cls._instance = instance
        return cls._instance

    def __init__(self, config_path: Optional[Path] = None):
        if self._initialized:
            return
        self.config_path = config_path or Path(__file__).parent / "config.yaml"
        self._specs: Dict[str, LemmaSpec] = {}
        self._load_lock = threading.Lock()
        self._load_config()
        self._initialized = True
        logger.info(f"✅ LemmaRegistry 初始化完成，已加载 {len(self._specs)} 个引理")

    def _load_config(self) -> None:
        """
        Raises:
            ConfigurationError: 文件缺失或格式错误
        """
        with self._load_lock:
            if not self.config_path.exists():
                raise ConfigurationError(f"lemma config not found: {self.config_path}")
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    config = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ConfigurationError(f"malformed lemma config: {self.config_path}", cause=e)
            for lemma_id, data in (config.get("lemmas") or {}).items():
                self._specs[lemma_id] = LemmaSpec.from_dict(lemma_id, data)
            logger.debug(f"引理配置已加载，包含 {len(self._specs)} 个定义")

    def reload(self) -> bool:
        try:
            self._specs.clear()
            self._load_config()
            logger.info("🔄 引理配置已重新加载")
            return True
        except ConfigurationError as e:
            logger.error(f"重新加载引理配置失败: {e}")
            return False

    def register(self, lemma_id: str, spec: Union[LemmaSpec, Dict[str, Any]]) -> None:
        if isinstance(spec, dict):
            spec = LemmaSpec.from_dict(lemma_id, spec)
        self._specs[lemma_id] = spec
        logger.info(f"已注册引理: {lemma_id}")

    def get_spec(self, lemma_id: str) -> LemmaSpec:
        """
        Raises:
            LemmaUnknown: 未注册的 id
        """
        spec = self._specs.get(lemma_id)
        if spec is None:
            raise LemmaUnknown(f"unknown lemma: {lemma_id}", details={"known": self.list_lemmas()})
        return spec

    def list_lemmas(self) -> List[str]:
        return sorted(self._specs)

    def resolve(self, lemma_id: str, action: str) -> Callable:
        """
        导入并返回实现函数

        Raises:
            LemmaUnknown: 未注册的 id 或该引理不支持此动作
            ConfigurationError: 实现入口无法导入
        """
        spec = self.get_spec(lemma_id)
        entry = getattr(spec, action, None) if action in ACTIONS else None
        if not entry:
            raise LemmaUnknown(
                f"lemma {lemma_id} has no {action} action",
                details={"lemma": lemma_id, "actions": spec.actions()},
            )
        try:
            module = importlib.import_module(entry["module"])
            return getattr(module, entry["function"])
        except (ImportError, AttributeError, KeyError) as e:
            raise ConfigurationError(f"cannot load {action} for {lemma_id}: {entry}", cause=e)


# === 模组级便捷函数 ===

_registry_instance: Optional[LemmaRegistry] = None


def get_lemma_registry() -> LemmaRegistry:
    global _registry_instance
    if _registry_instance is None:
        _registry_instance = LemmaRegistry()
    return _registry_instance


def get_lemma(lemma_id: str) -> LemmaSpec:
    return get_lemma_registry().get_spec(lemma_id)


def list_lemmas() -> List[str]:
    return get_lemma_registry().list_lemmas()


def resolve_lemma(lemma_id: str, action: str) -> Callable:
    return get_lemma_registry().resolve(lemma_id, action)


def register_lemma(lemma_id: str, spec: Union[LemmaSpec, Dict[str, Any]]) -> None:
    get_lemma_registry().register(lemma_id, spec)


def reload_lemmas() -> bool:
    return get_lemma_registry().reload()
