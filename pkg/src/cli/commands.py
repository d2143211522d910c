"""
命令处理

四个子命令（factorize / verify / cover / lemmas）各自返回 Report，
由 src.main 负责输出与退出码。
"""

import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from src.cli.models import CaseResult, IntRange, Report, RunParams
from src.common.lemmas import get_lemma, get_lemma_registry, resolve_lemma
from src.core.exceptions import ParseError
from src.core.logging_setup import get_logger, log_with_context
from src.core.metrics import metrics
from src.core.settings import get_settings
from src.covers.closure import BoundedClosure
from src.covers.cover import BoundFunction, Cover, covers_to_dict, load_covers, star, star_size_bound
from src.covers.escape import escape_element
from src.covers.groups import GroupFamily

logger = get_logger(__name__)

COVER_SUBCOMMANDS = ("star", "closure", "escape", "check")


def _given(params: RunParams, names: Sequence[str]) -> Dict[str, int]:
    """已给出参数的区间上端，用于上限检查"""
    out = {}
    for name in names:
        value = getattr(params, name, None)
        if isinstance(value, IntRange):
            out[name] = value.stop
        elif isinstance(value, int):
            out[name] = value
    return out


def cmd_factorize(lemma_id: str, target: str, params: RunParams) -> Report:
    """
    对单个目标求分解见证

    Raises:
        LemmaUnknown: 未注册的引理或不支持 factorize
        CapExceeded: 参数超出配置档上限
        ParseError: 目标或参数无法解析
    """
    spec = get_lemma(lemma_id)
    fn = resolve_lemma(lemma_id, "factorize")
    spec.check_caps(params.profile, _given(params, spec.parameters))

    report = Report(command={"command": "factorize", "lemma": lemma_id, "target": target, **params.echo()})
    with metrics.measure_lemma(lemma_id) as timer:
        case = fn(target, params)
    if get_settings().run.include_timing:
        case.elapsed_ms = timer.elapsed_ms
    report.add(case)

    log_with_context(
        logger, logging.INFO, "✅ 分解完成" if case.valid else "⚠️ 见证未通过验证",
        lemma=lemma_id, target=target,
    )
    return report


def cmd_verify(lemma_id: str, params: RunParams) -> Report:
    """
    按参数区间扫描引理

    未给出的参数取注册表中的默认区间。

    Raises:
        LemmaUnknown: 未注册的引理或不支持 verify
        CapExceeded: 区间超出配置档上限
    """
    spec = get_lemma(lemma_id)
    fn = resolve_lemma(lemma_id, "verify")

    filled = {
        name: IntRange.parse(text)
        for name, text in spec.defaults.items()
        if getattr(params, name, None) is None
    }
    if filled:
        params = params.model_copy(update=filled)
    spec.check_caps(params.profile, _given(params, spec.parameters))

    report = Report(command={"command": "verify", "lemma": lemma_id, **params.echo()})
    with metrics.measure_lemma(lemma_id):
        for case in fn(params, spec.limits(params.profile)):
            report.add(case)

    log_with_context(
        logger, logging.INFO, "✅ 扫描完成" if report.ok else "⚠️ 扫描发现反例",
        lemma=lemma_id, total=report.summary.total, failed=report.summary.failed,
    )
    return report


# === cover 子命令 ===

def _load_all(files: Sequence[str]) -> Tuple[GroupFamily, List[Cover], BoundFunction]:
    """
    Raises:
        ParseError: 未给出文件，或文件的窗口彼此不同
    """
    if not files:
        raise ParseError("cover commands need at least one cover file")
    family = None
    items: List[Cover] = []
    bound = None
    for path in files:
        fam, loaded, fbound = load_covers(Path(path))
        if family is not None and fam != family:
            raise ParseError(f"{path} uses a different window", details={"expected": family.describe()})
        family = fam
        items.extend(loaded)
        bound = bound or fbound
    return family, items, bound or BoundFunction()


def _cover_star(family: GroupFamily, items: List[Cover], bound: BoundFunction) -> CaseResult:
    if len(items) != 2:
        raise ParseError(f"star takes exactly two covers, got {len(items)}")
    left, right = items
    product = star(left, right)
    sizes = product.sizes()
    limit = star_size_bound(left, right)
    hypothesis_limit = [2 * bound(n) ** 2 for n in range(len(family))]
    valid = all(s <= b for s, b in zip(sizes, limit))
    return CaseResult(
        target="c1*c2",
        valid=valid,
        witness=covers_to_dict(family, [product]),
        value={"sizes": sizes, "size_bound": limit, "bound_of_f_covers": hypothesis_limit},
        detail=None if valid else f"sizes {sizes} exceed {limit}",
    )


def _cover_closure(items: List[Cover], depth: int) -> CaseResult:
    closure = BoundedClosure(items, depth)
    schedule = closure.materialize()
    return CaseResult(
        target=f"closure depth {depth}",
        valid=True,
        value={"count": len(schedule), "base": len(items), "largest": max(max(c.sizes()) for c in schedule)},
    )


def _cover_check(items: List[Cover], bound: BoundFunction) -> List[CaseResult]:
    cases = []
    for i, c in enumerate(items):
        valid = c.is_bounded_by(bound)
        cases.append(CaseResult(
            target=f"cover {i}",
            valid=valid,
            value={"sizes": c.sizes(), "bound": [bound(n) for n in range(len(c.sizes()))]},
            detail=None if valid else f"not a {bound.describe()}-cover",
        ))
    return cases


def cmd_cover(subcommand: str, files: Sequence[str], params: RunParams) -> Report:
    """
    覆盖代数子命令

    Raises:
        ParseError: 子命令未知或文件无法解析
        HypothesisViolated: escape 的计数假设不成立
        DepthExplosion: 闭包规模超出上限
    """
    if subcommand not in COVER_SUBCOMMANDS:
        raise ParseError(f"unknown cover subcommand: {subcommand}", details={"known": list(COVER_SUBCOMMANDS)})
    family, items, bound = _load_all(files)
    report = Report(command={
        "command": "cover",
        "subcommand": subcommand,
        "files": [Path(f).name for f in files],
        "bound": bound.describe(),
        "depth": params.depth,
    })

    with metrics.measure_lemma(f"cover-{subcommand}"):
        if subcommand == "star":
            report.add(_cover_star(family, items, bound))
        elif subcommand == "closure":
            report.add(_cover_closure(items, params.depth))
        elif subcommand == "escape":
            result = escape_element(items, params.depth, bound)
            report.add(CaseResult(
                target=f"escape depth {params.depth}",
                valid=result.escaped,
                value=result.to_dict(),
                detail=None if result.escaped else "escape tuple is still covered",
            ))
        else:
            for case in _cover_check(items, bound):
                report.add(case)

    logger.info(f"✅ cover {subcommand} 完成: {report.summary.passed}/{report.summary.total}")
    return report


def cmd_lemmas() -> Report:
    registry = get_lemma_registry()
    report = Report(command={"command": "lemmas"})
    for lemma_id in registry.list_lemmas():
        report.add(CaseResult(target=lemma_id, valid=True, value=registry.get_spec(lemma_id).to_dict()))
    return report


__all__ = ["COVER_SUBCOMMANDS", "cmd_factorize", "cmd_verify", "cmd_cover", "cmd_lemmas"]
