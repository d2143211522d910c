"""
有限域 GF(p^k)

元素统一编码为整数 code = Σ c_i p^i（多项式基系数，低次在前）。
不超过 settings.finite_field.table_max_order 的扩域使用 numpy 预计算加法/乘法/逆元表，
素域直接取模，其余情况退化为多项式运算。

文本格式：
    元素    p^k:c0,c1,...,c{k-1}
    域描述  p,k,m0,m1,...,mk
"""

import threading
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from cachetools import LRUCache, cached
from sympy import factorint, isprime

from src.core.exceptions import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NonPrime,
    ParseError,
    ValidationError,
)
from src.core.logging_setup import get_logger
from src.core.settings import get_settings

logger = get_logger(__name__)

Poly = Tuple[int, ...]


# === 多项式辅助函数（系数低次在前） ===

def _poly_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """a mod m，m 首一"""
    r = [c % p for c in a]
    _poly_trim(r)
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _poly_trim(r)
    return r


def _monic_polys(p: int, degree: int) -> Iterator[Poly]:
    """按尾部编码升序枚举给定次数的首一多项式"""
    for code in range(p ** degree):
        tail = []
        for _ in range(degree):
            tail.append(code % p)
            code //= p
        yield tuple(tail) + (1,)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """试除法判定首一多项式在 Z_p 上不可约"""
    degree = len(coeffs) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(coeffs, divisor, p):
                return False
    return True


def _least_irreducible(p: int, k: int) -> Poly:
    for candidate in _monic_polys(p, k):
        if is_irreducible(candidate, p):
            return candidate
    raise ValidationError(f"no irreducible polynomial of degree {k} over GF({p})")


# === 域 ===

class GaloisField:
    """
    有限域 GF(p^k)

    不可变；所有运算是纯函数，可并发调用。
    """

    def __init__(self, p: int, k: int, modulus: Poly, use_tables: bool):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._weights = np.array([p ** i for i in range(k)], dtype=np.int64)
        self._use_tables = use_tables and k > 1
        # x^t mod f，t = k..2k-2，用于多项式乘法的约化
        self._reductions = []
        power = [0] * k + [1]
        for _ in range(max(0, k - 1)):
            self._reductions.append(_poly_mod(power, modulus, p) + [0] * k)
            power = [0] + power
        if self._use_tables:
            self._build_tables()

    # --- 编码 ---

    def digits(self, a: int) -> List[int]:
        """元素编码的 p 进制系数"""
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, coeffs: Sequence[int]) -> int:
        """系数向量转编码"""
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def _digit_array(self, codes: np.ndarray) -> np.ndarray:
        return (codes[..., None] // self._weights) % self.p

    # --- 运算表 ---

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        codes = np.arange(q, dtype=np.int64)
        D = self._digit_array(codes)
        mod_low = np.array(self.modulus[:k], dtype=np.int64)

        shifted_digits = [D]
        for _ in range(1, k):
            prev = shifted_digits[-1]
            top = prev[:, k - 1]
            nxt = np.concatenate([np.zeros((q, 1), dtype=np.int64), prev[:, : k - 1]], axis=1)
            shifted_digits.append((nxt - top[:, None] * mod_low[None, :]) % p)

        add = np.empty((q, q), dtype=np.int32)
        mul = np.empty((q, q), dtype=np.int32)
        chunk = max(1, (1 << 20) // (q * k))
        for start in range(0, q, chunk):
            rows = D[start:start + chunk]
            add[start:start + chunk] = ((rows[:, None, :] + D[None, :, :]) % p) @ self._weights
            acc = np.zeros((rows.shape[0], q, k), dtype=np.int64)
            for u in range(k):
                acc += rows[:, u][:, None, None] * shifted_digits[u][None, :, :]
            mul[start:start + chunk] = (acc % p) @ self._weights

        self._add = add
        self._mul = mul
        self._neg = (((-D) % p) @ self._weights).astype(np.int32)
        inv = np.argmax(mul == 1, axis=1).astype(np.int32)
        inv[0] = 0
        self._inv = inv
        # 标量运算走 Python 列表索引
        self._add_list = add.tolist()
        self._mul_list = mul.tolist()
        self._neg_list = self._neg.tolist()
        self._inv_list = inv.tolist()
        logger.debug(f"GF({p}^{k}) 运算表已生成")

    # --- 标量运算 ---

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._use_tables:
            return self._add_list[a][b]
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self._use_tables:
            return self._neg_list[a]
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._use_tables:
            return self._mul_list[a][b]
        da, db = self.digits(a), self.digits(b)
        conv = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        out = conv[: self.k]
        for t in range(self.k, 2 * self.k - 1):
            c = conv[t] % self.p
            if c:
                red = self._reductions[t - self.k]
                for i in range(self.k):
                    out[i] += c * red[i]
        return self.from_digits(out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(details={"field": self.describe()})
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._use_tables:
            return self._inv_list[a]
        return self.power(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        """a^e，负指数取逆"""
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, e: int = 1) -> int:
        """x ↦ x^{p^e}"""
        e %= self.k
        for _ in range(e):
            a = self.power(a, self.p)
        return a

    def conjugate(self, a: int) -> int:
        """二次扩张上的共轭 x̄ = x^{√q}"""
        if self.k % 2:
            raise FieldMismatch(
                "conjugation needs an even-degree field",
                details={"field": self.describe()},
            )
        return self.frobenius(a, self.k // 2)

    def sqrt_char2(self, a: int) -> int:
        """特征 2 中的平方根 a^{q/2}"""
        if self.p != 2:
            raise FieldMismatch("square roots by Frobenius need characteristic 2")
        return self.power(a, self.q // 2)

    def multiplicative_order(self, a: int) -> int:
        from sympy import divisors
        if a == 0:
            raise DivisionByZero()
        for d in divisors(self.q - 1):
            if self.power(a, d) == 1:
                return d
        return self.q - 1

    # --- 向量化运算（numpy 编码数组） ---

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._use_tables:
            return self._add[a, b].astype(np.int64)
        return np.vectorize(self.add, otypes=[np.int64])(a, b)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        if self._use_tables:
            return self._neg[a].astype(np.int64)
        return np.vectorize(self.neg, otypes=[np.int64])(a)

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a * b) % self.p
        if self._use_tables:
            return self._mul[a, b].astype(np.int64)
        return np.vectorize(self.mul, otypes=[np.int64])(a, b)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """批量矩阵乘法，支持广播：(..., n, m) @ (..., m, r)"""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return np.matmul(a, b) % self.p
        inner = a.shape[-1]
        acc = None
        for l in range(inner):
            term = self.vmul(a[..., :, l][..., :, None], b[..., l, :][..., None, :])
            acc = term if acc is None else self.vadd(acc, term)
        return acc

    # --- 其它 ---

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValidationError(f"code {code} outside GF({self.q})")
        return FieldElement(self, code)

    def format_element(self, a: int) -> str:
        return f"{self.p}^{self.k}:" + ",".join(str(c) for c in self.digits(a))

    def describe(self) -> str:
        return ",".join(str(x) for x in (self.p, self.k) + tuple(self.modulus))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaloisField):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"


@dataclass(frozen=True)
class FieldElement:
    """域元素：域引用 + 整数编码"""
    field: GaloisField
    value: int

    def _coerce(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(details={"left": repr(self.field), "right": repr(other.field)})
            return other.value
        if isinstance(other, (int, np.integer)):
            # 整数按素域常数解释
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, code)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.power(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, e: int = 1) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, e))

    def conjugate(self) -> "FieldElement":
        return self._wrap(self.field.conjugate(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format_element(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self})"


# === 构造 ===

_field_cache: LRUCache = LRUCache(maxsize=64)


@cached(_field_cache, lock=threading.Lock())
def _build_field(p: int, k: int, use_tables: bool) -> GaloisField:
    modulus = _least_irreducible(p, k)
    field = GaloisField(p, k, modulus, use_tables)
    logger.debug(f"构造 GF({p}^{k})，模多项式 {modulus}")
    return field


def make_field(p: int, k: int = 1) -> GaloisField:
    """
    构造 GF(p^k)

    模多项式为尾部编码最小的首一不可约多项式，对同一 (p, k) 结果确定。
    """
    if k < 1:
        raise ValidationError(f"degree must be positive, got {k}")
    if not isprime(p):
        raise NonPrime(details={"p": p})
    config = get_settings().finite_field
    if p ** k > config.max_order:
        raise DegreeTooLarge(details={"p": p, "k": k, "max_order": config.max_order})
    return _build_field(p, k, p ** k <= config.table_max_order)


def split_prime_power(q: int) -> Tuple[int, int]:
    """q = p^k → (p, k)"""
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise NonPrime(f"{q} is not a prime power", details={"q": q})
    (p, k), = factors.items()
    return int(p), int(k)


def field_of_order(q: int) -> GaloisField:
    p, k = split_prime_power(q)
    return make_field(p, k)


def parse_element(text: str, field: Optional[GaloisField] = None) -> FieldElement:
    """解析 `p^k:c0,...` 格式"""
    try:
        head, body = text.strip().split(":", 1)
        p_text, k_text = head.split("^", 1)
        p, k = int(p_text), int(k_text)
        coeffs = [int(c) for c in body.split(",")] if body.strip() else []
    except ValueError as e:
        raise ParseError(f"malformed field element: {text!r}", cause=e)
    if len(coeffs) != k or any(not 0 <= c < p for c in coeffs):
        raise ParseError(f"malformed field element: {text!r}")
    target = field or make_field(p, k)
    if (target.p, target.k) != (p, k):
        raise FieldMismatch(f"element {text!r} is not in {target!r}")
    return FieldElement(target, target.from_digits(coeffs))


def format_element(x: FieldElement) -> str:
    return str(x)


def describe_field(field: GaloisField) -> str:
    return field.describe()


def parse_field(text: str) -> GaloisField:
    """解析 `p,k,m0,...,mk` 格式，模多项式必须与确定性选择一致"""
    try:
        parts = [int(x) for x in text.strip().split(",")]
    except ValueError as e:
        raise ParseError(f"malformed field descriptor: {text!r}", cause=e)
    if len(parts) < 3:
        raise ParseError(f"malformed field descriptor: {text!r}")
    p, k, modulus = parts[0], parts[1], tuple(parts[2:])
    field = make_field(p, k)
    if modulus != field.modulus:
        raise ParseError(
            f"modulus {modulus} differs from the canonical {field.modulus}",
            details={"descriptor": text},
        )
    return field


def frobenius(x: FieldElement, e: int) -> FieldElement:
    """x^{p^e}"""
    if e < 0:
        raise ValidationError("Frobenius exponent must be non-negative")
    return x.frobenius(e)


def conjugate(x: FieldElement) -> FieldElement:
    return x.conjugate()


__all__ = [
    "GaloisField",
    "FieldElement",
    "make_field",
    "field_of_order",
    "split_prime_power",
    "is_irreducible",
    "parse_element",
    "format_element",
    "parse_field",
    "describe_field",
    "frobenius",
    "conjugate",
]
