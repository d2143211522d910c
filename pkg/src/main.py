import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

# 设置 Windows 控制台编码为 UTF-8
if sys.platform == "win32":
    try:
        sys.stdout.reconfigure(encoding='utf-8')
        sys.stderr.reconfigure(encoding='utf-8')
    except (AttributeError, ValueError):
        pass

# 将项目根目录加入 sys.path，确保 `python src/main.py` 也能导入 src 包
root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

import pydantic  # noqa: E402

from src.cli.commands import COVER_SUBCOMMANDS, cmd_cover, cmd_factorize, cmd_lemmas, cmd_verify  # noqa: E402
from src.cli.models import IntRange, Report, RunParams  # noqa: E402
from src.core.exceptions import AppError, ParseError  # noqa: E402
from src.core.settings import PROFILES, get_settings  # noqa: E402

"""
命令行入口
    python -m src.main factorize <lemma> [target] [--m ..]
    python -m src.main verify <lemma> [--q a..b ..]
    python -m src.main cover {star,closure,escape,check} <files...> [--depth N]
    python -m src.main lemmas

退出码：0 全部通过，1 验证失败，2 用法/解析错误，3 上限/假设不满足
"""


def _common_flags() -> argparse.ArgumentParser:
    run = get_settings().run
    parent = argparse.ArgumentParser(add_help=False)
    for name in ("m", "n", "d", "q"):
        parent.add_argument(f"--{name}", default=None, help=f"{name}，单值或区间 a..b")
    parent.add_argument("--bound", type=int, default=5, help="覆盖半径上界（saxl）")
    parent.add_argument("--depth", type=int, default=3, help="闭包深度（cover）")
    parent.add_argument("--seed", type=int, default=run.seed, help="随机种子")
    parent.add_argument("--profile", choices=PROFILES, default=run.profile, help="运行配置档")
    parent.add_argument("--out", type=Path, default=None, help="报告输出路径，缺省写 stdout")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="python -m src.main", description="有限群一致生成引理工作台")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", parents=[common], help="对单个目标求分解见证")
    p.add_argument("lemma")
    p.add_argument("target", nargs="?", default=None)

    p = sub.add_parser("verify", parents=[common], help="按参数区间扫描引理")
    p.add_argument("lemma")

    p = sub.add_parser("cover", parents=[common], help="覆盖代数")
    p.add_argument("subcommand", choices=COVER_SUBCOMMANDS)
    p.add_argument("files", nargs="+")

    sub.add_parser("lemmas", parents=[common], help="列出已注册引理")
    return parser


def _params(args: argparse.Namespace) -> RunParams:
    """
    Raises:
        ParseError: 区间或配置档无法解析
    """
    ranges = {}
    for name in ("m", "n", "d", "q"):
        text = getattr(args, name)
        ranges[name] = IntRange.parse(text) if text is not None else None
    try:
        return RunParams(bound=args.bound, depth=args.depth, seed=args.seed, profile=args.profile, **ranges)
    except pydantic.ValidationError as e:
        raise ParseError("invalid command parameters", details={"errors": e.errors(include_url=False)}, cause=e)


def _dispatch(args: argparse.Namespace) -> Report:
    params = _params(args)
    if args.command == "factorize":
        return cmd_factorize(args.lemma, args.target, params)
    if args.command == "verify":
        return cmd_verify(args.lemma, params)
    if args.command == "cover":
        return cmd_cover(args.subcommand, args.files, params)
    return cmd_lemmas()


def _emit(report: Report, out: Optional[Path]) -> None:
    text = report.to_json()
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = _dispatch(args)
    except AppError as e:
        sys.stderr.write(json.dumps(e.to_dict(), ensure_ascii=False, sort_keys=True, default=str) + "\n")
        return e.exit_code
    _emit(report, args.out)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
