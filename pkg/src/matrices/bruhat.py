"""
Bruhat 分解 a = b1 · w · b2

b1、b2 上三角可逆，w 为置换矩阵。
逐列从左到右消元，主元取该列中最靠下的未使用非零行；
行变换（下行加到上行）对应左乘上三角幺幂矩阵，列变换（左列加到右列）对应右乘。
"""

from dataclasses import dataclass
from typing import List

from src.core.exceptions import Singular
from src.fields.galois import GaloisField
from src.matrices.matrix import FieldMatrix, format_matrix


@dataclass(frozen=True)
class BruhatForm:
    b1: FieldMatrix
    w: FieldMatrix
    b2: FieldMatrix

    def product(self) -> FieldMatrix:
        return self.b1 * self.w * self.b2


def _add_row(field: GaloisField, m: List[List[int]], target: int, source: int, c: int) -> None:
    """row_target += c · row_source"""
    m[target] = [field.add(x, field.mul(c, y)) for x, y in zip(m[target], m[source])]


def _add_col(field: GaloisField, m: List[List[int]], target: int, source: int, c: int) -> None:
    """col_target += c · col_source"""
    for row in m:
        row[target] = field.add(row[target], field.mul(c, row[source]))


def bruhat_decompose(a: FieldMatrix) -> BruhatForm:
    """
    Raises:
        Singular: a 不可逆
    """
    field, n = a.field, a.d
    m = a.to_rows()
    b1 = FieldMatrix.identity(field, n).to_rows()       # L⁻¹
    r_inv = FieldMatrix.identity(field, n).to_rows()    # R⁻¹
    used = [False] * n
    pivot_rows = []

    for c in range(n):
        r = next((i for i in reversed(range(n)) if not used[i] and m[i][c]), None)
        if r is None:
            raise Singular(details={"matrix": format_matrix(a), "column": c})
        used[r] = True
        pivot_rows.append(r)
        inv = field.inv(m[r][c])
        for i in range(r):
            if m[i][c]:
                f = field.mul(m[i][c], inv)
                _add_row(field, m, i, r, field.neg(f))
                _add_col(field, b1, r, i, f)
        for j in range(c + 1, n):
            if m[r][j]:
                g = field.mul(m[r][j], inv)
                _add_col(field, m, j, c, field.neg(g))
                _add_row(field, r_inv, c, j, g)

    w = [[0] * n for _ in range(n)]
    diag = [0] * n
    for c, r in enumerate(pivot_rows):
        w[r][c] = 1
        diag[c] = m[r][c]
    b2 = FieldMatrix.diagonal(field, diag) * FieldMatrix(field, r_inv)
    return BruhatForm(b1=FieldMatrix(field, b1), w=FieldMatrix(field, w), b2=b2)


__all__ = ["BruhatForm", "bruhat_decompose"]
