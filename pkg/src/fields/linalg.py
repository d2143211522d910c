"""
任意 GaloisField 上的标量高斯消元（元素为整数编码的嵌套列表）

用于大域上的小规模线性代数（正规基判定、坐标求解），
批量矩阵运算见 src.matrices。
"""

from typing import List, Optional, Sequence, Tuple

from src.core.exceptions import Singular
from src.fields.galois import GaloisField

Rows = List[List[int]]


def row_reduce(field: GaloisField, rows: Sequence[Sequence[int]]) -> Tuple[Rows, List[int]]:
    """化为行最简形，返回 (矩阵, 主元列)"""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    if not m:
        return m, pivots
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(field: GaloisField, rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(field, rows)[1])


def solve(field: GaloisField, matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[int]:
    """解方阵方程 matrix · x = rhs"""
    n = len(matrix)
    augmented = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    reduced, pivots = row_reduce(field, augmented)
    if pivots[:n] != list(range(n)):
        raise Singular(details={"rank": len([p for p in pivots if p < n]), "n": n})
    return [reduced[i][n] for i in range(n)]


def determinant(field: GaloisField, matrix: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        pivot: Optional[int] = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = field.neg(det)
        det = field.mul(det, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                factor = field.mul(m[i][c], inv)
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[i], m[c])]
    return det


__all__ = ["row_reduce", "rank", "solve", "determinant"]
