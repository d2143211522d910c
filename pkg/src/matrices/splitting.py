"""
把任意方阵写成两个可逆矩阵之和

s = P⁻¹ E_r Q⁻¹（秩标准形），E_r = N₁ + N₂ 两项都可逆：
- q > 2：N₁ = diag(a,..,a,1,..,1)，a 为编码 2 的元素，N₂ = E_r - N₁
- q = 2：把 E_r 切成 2×2 / 3×3 的 I 块、diag(1,0) 块与零块，逐块查小表；
  零块用 I + I。1×1 的 s = 1 无法拆分。

小表在首次使用时按编码顺序穷举得到并缓存。
"""

import threading
from itertools import product
from typing import Dict, List, Tuple

import numpy as np
from cachetools import LRUCache, cached

from src.core.exceptions import DimensionMismatch, NoSplit
from src.core.logging_setup import get_logger
from src.core.metrics import metrics
from src.fields.galois import GaloisField
from src.matrices.matrix import FieldMatrix

logger = get_logger(__name__)


def rank_normal_form(s: FieldMatrix) -> Tuple[FieldMatrix, FieldMatrix, int]:
    """
    返回 (P, Q, r) 使 P · s · Q = E_r

    行消元得到简化阶梯形，再用列变换清除主元行中的其它元素，最后把主元列换到前面。
    """
    field, n = s.field, s.d
    m = s.to_rows()
    p_rows = FieldMatrix.identity(field, n).to_rows()
    q_rows = FieldMatrix.identity(field, n).to_rows()
    pivots: List[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p_rows[r], p_rows[pivot] = p_rows[pivot], p_rows[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        p_rows[r] = [field.mul(inv, x) for x in p_rows[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
                p_rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(p_rows[i], p_rows[r])]
        pivots.append(c)
        r += 1

    # 列变换：主元行只保留主元
    for i, c in enumerate(pivots):
        for j in range(n):
            if j != c and m[i][j]:
                f = m[i][j]
                for row in (*m, *q_rows):
                    row[j] = field.sub(row[j], field.mul(f, row[c]))

    # 主元列换到前 r 列
    order = pivots + [j for j in range(n) if j not in pivots]
    q_rows = [[row[j] for j in order] for row in q_rows]
    return FieldMatrix(field, p_rows), FieldMatrix(field, q_rows), r


def _invertible(field: GaloisField, rows: List[List[int]]) -> bool:
    return FieldMatrix(field, rows).det() != 0


@cached(LRUCache(maxsize=32), lock=threading.Lock())
def least_block_split(field: GaloisField, target: Tuple[Tuple[int, ...], ...]) -> Tuple[FieldMatrix, FieldMatrix]:
    """按行优先编码升序找最小的 A，使 A 与 target - A 都可逆"""
    metrics.record_table_miss("split")
    k = len(target)
    t = FieldMatrix(field, target)
    for digits in product(range(field.q), repeat=k * k):
        # 行优先编码 Σ a_i q^i 升序：最低位为 (0,0)
        entries = np.array(digits[::-1], dtype=np.int64).reshape(k, k)
        a = FieldMatrix(field, entries)
        if a.det() != 0 and (t - a).det() != 0:
            logger.debug(f"拆分小表 {target} 已生成")
            return a, t - a
    raise NoSplit(details={"target": [list(r) for r in target]})


def _identity_block(k: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _char2_blocks(field: GaloisField, n: int, r: int) -> Tuple[FieldMatrix, FieldMatrix]:
    """q = 2 时 E_r = N₁ + N₂"""
    if n == 1 and r == 1:
        raise NoSplit(details={"dimension": 1, "field": repr(field)})
    blocks: List[Tuple[FieldMatrix, FieldMatrix]] = []
    used = 0
    if r == 1:
        blocks.append(least_block_split(field, ((1, 0), (0, 0))))
        used = 2
    else:
        sizes = [2] * (r // 2) if r % 2 == 0 else [3] + [2] * ((r - 3) // 2)
        for size in sizes:
            blocks.append(least_block_split(field, _identity_block(size)))
            used += size
    if n > used:
        identity = FieldMatrix.identity(field, n - used)
        blocks.append((identity, identity))
    return (
        FieldMatrix.block_diagonal([a for a, _ in blocks]),
        FieldMatrix.block_diagonal([b for _, b in blocks]),
    )


def split_nonsingular(s: FieldMatrix) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    s = s1 + s2，s1、s2 可逆

    Raises:
        NoSplit: 仅在 GF(2) 上 1×1 的 s = 1 时出现
    """
    field, n = s.field, s.d
    if n < 1:
        raise DimensionMismatch("empty matrix")
    identity = FieldMatrix.identity(field, n)
    if not s.entries.any():
        return identity, -identity

    p, q, r = rank_normal_form(s)
    if field.q > 2:
        a = 2
        n1 = FieldMatrix.diagonal(field, [a] * r + [1] * (n - r))
        e_r = FieldMatrix.diagonal(field, [1] * r + [0] * (n - r))
        n2 = e_r - n1
    else:
        n1, n2 = _char2_blocks(field, n, r)
    p_inv, q_inv = p.inverse(), q.inverse()
    return p_inv * n1 * q_inv, p_inv * n2 * q_inv


__all__ = ["split_nonsingular", "rank_normal_form", "least_block_split"]
