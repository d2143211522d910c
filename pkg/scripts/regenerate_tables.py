"""
Small-matrix sum tables: check or regenerate `src/forms/tables.yaml`.

For each diagonal 0/1 pattern c the table lists a fixed number of A in SL(n, p)
with sum of A A^T equal to diag(c). The search is layered and deterministic,
so regenerating twice gives the same file.

Usage:
    python scripts/regenerate_tables.py            # validate the shipped tables and diff them against a fresh search
    python scripts/regenerate_tables.py --minimal  # also report the least term count per pattern
    python scripts/regenerate_tables.py --write    # search again and overwrite tables.yaml
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from src.core.exceptions import ConfigurationError  # noqa: E402
from src.forms.tables import (  # noqa: E402
    TABLES_PATH,
    load_tables,
    minimal_terms,
    search_sum_table,
    table_to_yaml,
    validate_table,
)

# name -> (p, n, terms)
SHAPES = {
    "sl2_gf3": (3, 2, 6),
    "sl3_gf2": (2, 3, 4),
}

HEADER = """# 小矩阵和表：对每个对角模式 c，给出固定个数的 A ∈ SL(n, p)，使 Σ A Aᵀ = diag(c)
# 键为模式的 0/1 串，矩阵按行书写
# 由 scripts/regenerate_tables.py 校验与重新搜索

"""


def diff_table(shipped, fresh) -> list:
    """Pattern keys whose matrices differ between the shipped and the searched table."""
    if (shipped.p, shipped.n, shipped.terms) != (fresh.p, fresh.n, fresh.terms):
        return ["<shape>"]
    keys = sorted(set(shipped.patterns) | set(fresh.patterns))
    return [k for k in keys if shipped.patterns.get(k) != fresh.patterns.get(k)]


def main() -> int:
    parser = argparse.ArgumentParser(description="Validate or regenerate the small-matrix sum tables.")
    parser.add_argument("--write", action="store_true", help="Search again and overwrite the table file.")
    parser.add_argument("--minimal", action="store_true", help="Report the least term count for each pattern.")
    parser.add_argument("--path", type=Path, default=TABLES_PATH, help=f"Table file (default: {TABLES_PATH})")
    args = parser.parse_args()

    if args.write:
        body = {}
        for name, (p, n, terms) in SHAPES.items():
            table = search_sum_table(p, n, terms, name)
            validate_table(table)
            body[name] = table_to_yaml(table)
        text = yaml.safe_dump(body, allow_unicode=True, sort_keys=False, default_flow_style=None)
        args.path.write_text(HEADER + text, encoding="utf-8")
        print(f"wrote={args.path}")

    try:
        tables = load_tables(args.path)
    except ConfigurationError as e:
        print(f"invalid: {e}")
        return 1

    status = 0
    for name, table in sorted(tables.items()):
        print(f"{name}: p={table.p} n={table.n} terms={table.terms} patterns={len(table.patterns)} ok")
        if name in SHAPES:
            p, n, terms = SHAPES[name]
            changed = diff_table(table, search_sum_table(p, n, terms, name))
            if changed:
                status = 1
                print(f"  differs from a fresh search: {', '.join(changed)}")
            else:
                print("  matches a fresh search")
        if args.minimal:
            for key, k in sorted(minimal_terms(table.p, table.n).items()):
                print(f"  {key}: {k}")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
