"""
命令行层

    from src.cli import cmd_verify, RunParams

    report = cmd_verify("uni1", RunParams(m=IntRange.parse("3..7")))
    print(report.to_json())
"""

from src.cli.models import IntRange, RunParams, CaseResult, Summary, Report
from src.cli.commands import COVER_SUBCOMMANDS, cmd_factorize, cmd_verify, cmd_cover, cmd_lemmas

__all__ = [
    "IntRange",
    "RunParams",
    "CaseResult",
    "Summary",
    "Report",
    "COVER_SUBCOMMANDS",
    "cmd_factorize",
    "cmd_verify",
    "cmd_cover",
    "cmd_lemmas",
]
