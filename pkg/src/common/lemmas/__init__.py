"""
引理注册表

使用方式：
    from src.common.lemmas import get_lemma, resolve_lemma

    spec = get_lemma("brenner")
    verify = resolve_lemma("brenner", "verify")
"""

from src.common.lemmas.registry import (
    ACTIONS,
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
    "ACTIONS",
    "LemmaSpec",
    "LemmaRegistry",
    "get_lemma_registry",
    "get_lemma",
    "list_lemmas",
    "resolve_lemma",
    "register_lemma",
    "reload_lemmas",
]
