"""
公共模组

目录结构：
    src/common/
    ├── __init__.py
    └── lemmas/
        ├── __init__.py
        ├── registry.py     # 引理注册表
        └── config.yaml     # 引理配置

使用方式：
    from src.common.lemmas import get_lemma, resolve_lemma
    spec = get_lemma("uni1")
    verify = resolve_lemma("uni1", "verify")
"""

from src.common.lemmas import (
    LemmaSpec,
    LemmaRegistry,
    get_lemma_registry,
    get_lemma,
    list_lemmas,
    resolve_lemma,
    register_lemma,
    reload_lemmas,
)

__all__ = [
    "LemmaSpec",
    "LemmaRegistry",
    "get_lemma_registry",
    "get_lemma",
    "list_lemmas",
    "resolve_lemma",
    "register_lemma",
    "reload_lemmas",
]
