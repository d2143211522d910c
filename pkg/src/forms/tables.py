"""
小矩阵和表

对每个对角 0/1 模式 c，给出固定个数的 A_i ∈ SL(n, p)，使 Σ A_i A_iᵀ = diag(c)：
- sl2_gf3：n = 2，p = 3，每个模式 6 项
- sl3_gf2：n = 3，p = 2，每个模式 4 项

表存放在 tables.yaml，首次使用时加载并逐项校验；
search_sum_table 按编码顺序逐层搜索，供 scripts/regenerate_tables.py 对照。
"""

import threading
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import yaml
from cachetools import LRUCache, cached

from src.core.exceptions import ConfigurationError
from src.core.logging_setup import get_logger
from src.core.metrics import metrics
from src.fields.galois import make_field
from src.fields.linalg import determinant

logger = get_logger(__name__)

TABLES_PATH = Path(__file__).parent / "tables.yaml"

Small = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SumTable:
    """模式 → 固定长度的矩阵列表"""
    name: str
    p: int
    n: int
    terms: int
    patterns: Dict[str, Tuple[Small, ...]]

    def lookup(self, bits: Tuple[int, ...]) -> Tuple[Small, ...]:
        return self.patterns["".join(str(b) for b in bits)]


def _gram(a: Small, p: int) -> Small:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * a[j][k] for k in range(n)) % p for j in range(n)) for i in range(n)
    )


def _add(x: Small, y: Small, p: int) -> Small:
    return tuple(tuple((u + v) % p for u, v in zip(rx, ry)) for rx, ry in zip(x, y))


def _diag(bits: Tuple[int, ...]) -> Small:
    n = len(bits)
    return tuple(tuple(bits[i] if i == j else 0 for j in range(n)) for i in range(n))


def _zero(n: int) -> Small:
    return tuple(tuple(0 for _ in range(n)) for _ in range(n))


def _patterns(n: int) -> Iterator[Tuple[int, ...]]:
    # "00", "10", "01", "11" 的顺序：低位在前
    for code in range(2 ** n):
        yield tuple((code >> i) & 1 for i in range(n))


def validate_table(table: SumTable) -> None:
    """
    Raises:
        ConfigurationError: 缺模式、项数不符、det ≠ 1 或和不等于目标
    """
    field = make_field(table.p, 1)
    for bits in _patterns(table.n):
        key = "".join(str(b) for b in bits)
        mats = table.patterns.get(key)
        if mats is None or len(mats) != table.terms:
            raise ConfigurationError(f"table {table.name}: pattern {key} missing or wrong length")
        total = _zero(table.n)
        for a in mats:
            if determinant(field, [list(r) for r in a]) != 1:
                raise ConfigurationError(f"table {table.name}: pattern {key} has a matrix outside SL")
            total = _add(total, _gram(a, table.p), table.p)
        if total != _diag(bits):
            raise ConfigurationError(f"table {table.name}: pattern {key} does not sum to its target")


def _parse(name: str, raw: dict) -> SumTable:
    try:
        patterns = {
            str(key): tuple(tuple(tuple(int(x) for x in row) for row in m) for m in mats)
            for key, mats in raw["patterns"].items()
        }
        return SumTable(name=name, p=int(raw["p"]), n=int(raw["n"]), terms=int(raw["terms"]), patterns=patterns)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"malformed table {name}", cause=e)


@cached(LRUCache(maxsize=4), lock=threading.Lock())
def load_tables(path: Path = TABLES_PATH) -> Dict[str, SumTable]:
    """加载并校验 tables.yaml"""
    if not path.exists():
        raise ConfigurationError(f"table file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    tables = {name: _parse(name, body) for name, body in raw.items()}
    for table in tables.values():
        validate_table(table)
    metrics.record_table_miss("sum-table")
    logger.info(f"✅ 小矩阵和表已加载: {sorted(tables)}")
    return tables


def sl2_gf3_table() -> SumTable:
    metrics.record_table_hit("sum-table")
    return load_tables()["sl2_gf3"]


def sl3_gf2_table() -> SumTable:
    metrics.record_table_hit("sum-table")
    return load_tables()["sl3_gf2"]


def special_linear_elements(p: int, n: int) -> List[Small]:
    """SL(n, p) 全体，按行优先字典序"""
    field = make_field(p, 1)
    out = []
    for flat in product(range(p), repeat=n * n):
        a = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if determinant(field, [list(r) for r in a]) == 1:
            out.append(a)
    return out


def search_sum_table(p: int, n: int, terms: int, name: Optional[str] = None) -> SumTable:
    """
    逐层搜索：第 k 层记录恰好 k 项可达的和及其最先到达的前驱

    和按排序顺序扩展、矩阵按字典序尝试，结果确定。
    """
    elements = special_linear_elements(p, n)
    grams = [(a, _gram(a, p)) for a in elements]
    layers: List[Dict[Small, Optional[Tuple[Small, Small]]]] = [{_zero(n): None}]
    for _ in range(terms):
        nxt: Dict[Small, Tuple[Small, Small]] = {}
        for s in sorted(layers[-1]):
            for a, g in grams:
                t = _add(s, g, p)
                if t not in nxt:
                    nxt[t] = (s, a)
        layers.append(nxt)

    patterns: Dict[str, Tuple[Small, ...]] = {}
    for bits in _patterns(n):
        target = _diag(bits)
        if target not in layers[terms]:
            raise ConfigurationError(f"pattern {bits} is not a sum of {terms} terms")
        chain: List[Small] = []
        s = target
        for k in range(terms, 0, -1):
            prev, a = layers[k][s]
            chain.append(a)
            s = prev
        patterns["".join(str(b) for b in bits)] = tuple(reversed(chain))
    return SumTable(name=name or f"sl{n}_gf{p}", p=p, n=n, terms=terms, patterns=patterns)


def minimal_terms(p: int, n: int, limit: int = 8) -> Dict[str, int]:
    """每个模式最少需要几项（至少一项）"""
    grams = {_gram(a, p) for a in special_linear_elements(p, n)}
    reach = {_zero(n)}
    found: Dict[str, int] = {}
    for k in range(1, limit + 1):
        reach = {_add(s, g, p) for s in reach for g in grams}
        for bits in _patterns(n):
            key = "".join(str(b) for b in bits)
            if key not in found and _diag(bits) in reach:
                found[key] = k
    return found


def table_to_yaml(table: SumTable) -> dict:
    return {
        "p": table.p,
        "n": table.n,
        "terms": table.terms,
        "patterns": {k: [[list(r) for r in m] for m in v] for k, v in table.patterns.items()},
    }


__all__ = [
    "SumTable",
    "load_tables",
    "validate_table",
    "sl2_gf3_table",
    "sl3_gf2_table",
    "search_sum_table",
    "minimal_terms",
    "special_linear_elements",
    "table_to_yaml",
    "TABLES_PATH",
]
