"""
平方和分解：按编码字典序扫描，取最小解
"""

from itertools import product
from typing import Optional, Tuple

from src.core.exceptions import ValidationError
from src.fields.galois import GaloisField


def square_root(field: GaloisField, a: int) -> Optional[int]:
    """最小编码的平方根，不存在时返回 None"""
    if field.p == 2:
        return field.sqrt_char2(a)
    return next((x for x in field.elements() if field.mul(x, x) == a), None)


def four_squares(field: GaloisField, lam: int) -> Tuple[int, int, int, int]:
    """
    λ = β₁² + β₂² + β₃² + β₄²，βᵢ 全非零

    Raises:
        ValidationError: 特征 ≤ 3
    """
    if field.p <= 3:
        raise ValidationError("four nonzero squares need characteristic > 3", details={"p": field.p})
    squares = [field.mul(x, x) for x in range(field.q)]
    for beta in product(field.nonzero(), repeat=4):
        total = 0
        for b in beta:
            total = field.add(total, squares[b])
        if total == lam:
            return beta
    raise ValidationError("no four-square representation", details={"lambda": lam})


def two_squares(field: GaloisField, lam: int) -> Tuple[int, int]:
    """λ = α² + β²，允许为零"""
    squares = [field.mul(x, x) for x in range(field.q)]
    for alpha in field.elements():
        for beta in field.elements():
            if field.add(squares[alpha], squares[beta]) == lam:
                return alpha, beta
    raise ValidationError("no two-square representation", details={"lambda": lam})


__all__ = ["four_squares", "two_squares", "square_root"]
