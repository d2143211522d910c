"""
数论辅助：本原素因子（Zsigmondy 素数）与乘法阶
"""

from sympy import n_order, primefactors

from src.core.exceptions import NoZsigmondy, ValidationError
from src.fields.galois import split_prime_power


def multiplicative_order(q: int, r: int) -> int:
    """q 模 r 的乘法阶"""
    return int(n_order(q, r))


def zsigmondy_prime(q: int, m: int) -> int:
    """
    最小的素数 r > 2，使 r | q^m - 1 且 r ∤ q^j - 1（1 ≤ j < m）

    Raises:
        NoZsigmondy: 经典例外情形，如 (2, 6)
    """
    split_prime_power(q)
    if m < 2:
        raise ValidationError(f"m must be at least 2, got {m}")
    for r in primefactors(q ** m - 1):
        if r > 2 and multiplicative_order(q, r) == m:
            return int(r)
    raise NoZsigmondy(details={"q": q, "m": m})


__all__ = ["zsigmondy_prime", "multiplicative_order"]
