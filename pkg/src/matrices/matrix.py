"""
有限域上的矩阵

FieldMatrix 持有只读的整数编码数组，乘法走 GaloisField.matmul，
行列式与求逆用标量高斯消元（维数都很小）。

文本格式：`d,q;row0|row1|...`，行内元素以空格分隔，元素为 `p^k:c0,...` 格式。
"""

import random
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import DimensionMismatch, FieldMismatch, ParseError, Singular
from src.fields.galois import GaloisField, field_of_order, parse_element
from src.fields.linalg import determinant, row_reduce
from src.permutations.permutation import Permutation


class FieldMatrix:
    """GF(q) 上的不可变矩阵"""

    __slots__ = ("field", "entries")

    def __init__(self, field: GaloisField, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch("matrix entries must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldMismatch(f"entries outside GF({field.q})")
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, key, value):
        raise AttributeError("FieldMatrix is immutable")

    # --- 构造 ---

    @classmethod
    def identity(cls, field: GaloisField, d: int) -> "FieldMatrix":
        return cls(field, np.eye(d, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GaloisField, rows: int, cols: Optional[int] = None) -> "FieldMatrix":
        return cls(field, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def diagonal(cls, field: GaloisField, values: Sequence[int]) -> "FieldMatrix":
        return cls(field, np.diag(np.array([int(v) for v in values], dtype=np.int64)))

    @classmethod
    def elementary(cls, field: GaloisField, d: int, i: int, j: int, c: int) -> "FieldMatrix":
        """I + c·E_ij"""
        arr = np.eye(d, dtype=np.int64)
        arr[i, j] = field.add(int(arr[i, j]), int(c))
        return cls(field, arr)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["FieldMatrix"]) -> "FieldMatrix":
        field = blocks[0].field
        size = sum(b.rows for b in blocks)
        arr = np.zeros((size, size), dtype=np.int64)
        at = 0
        for b in blocks:
            arr[at:at + b.rows, at:at + b.cols] = b.entries
            at += b.rows
        return cls(field, arr)

    # --- 形状 ---

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def d(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("matrix is not square")
        return self.rows

    def __getitem__(self, index: Tuple[int, int]) -> int:
        return int(self.entries[index])

    def to_rows(self) -> List[List[int]]:
        return self.entries.tolist()

    def _check(self, other: "FieldMatrix") -> None:
        if other.field != self.field:
            raise FieldMismatch(details={"left": repr(self.field), "right": repr(other.field)})

    # --- 运算 ---

    def __mul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(details={"left": self.entries.shape, "right": other.entries.shape})
        return FieldMatrix(self.field, self.field.matmul(self.entries, other.entries))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatch(details={"left": self.entries.shape, "right": other.entries.shape})
        return FieldMatrix(self.field, self.field.vadd(self.entries, other.entries))

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.field.vneg(self.entries))

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        return self + (-other)

    def scale(self, c: int) -> "FieldMatrix":
        return FieldMatrix(self.field, self.field.vmul(np.full_like(self.entries, int(c)), self.entries))

    def apply(self, vector: Sequence[int]) -> List[int]:
        """矩阵作用于列向量"""
        column = np.array([[int(x)] for x in vector], dtype=np.int64).reshape(-1, 1)
        return [int(x) for x in self.field.matmul(self.entries, column)[:, 0]]

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.entries.T.copy())

    def map_entries(self, fn) -> "FieldMatrix":
        return FieldMatrix(self.field, [[fn(int(x)) for x in row] for row in self.entries])

    def det(self) -> int:
        return determinant(self.field, self.to_rows())

    def rank(self) -> int:
        return len(row_reduce(self.field, self.to_rows())[1])

    def inverse(self) -> "FieldMatrix":
        d = self.d
        augmented = [row + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(self.to_rows())]
        reduced, pivots = row_reduce(self.field, augmented)
        if pivots[:d] != list(range(d)):
            raise Singular(details={"matrix": format_matrix(self)})
        return FieldMatrix(self.field, [row[d:] for row in reduced])

    def power(self, e: int) -> "FieldMatrix":
        if e < 0:
            return self.inverse().power(-e)
        result, base = self.identity_like(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self, limit: int = 1 << 20) -> int:
        """乘法阶（逐次相乘）"""
        identity = self.identity_like()
        current = self
        for k in range(1, limit + 1):
            if current == identity:
                return k
            current = current * self
        raise Singular(f"order exceeds {limit}")

    def identity_like(self) -> "FieldMatrix":
        return FieldMatrix.identity(self.field, self.d)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.rows, dtype=np.int64)))

    def is_upper_triangular(self) -> bool:
        return not np.any(np.tril(self.entries, -1))

    def is_permutation_matrix(self) -> bool:
        e = self.entries
        return bool(
            np.all((e == 0) | (e == 1))
            and np.all(e.sum(axis=0) == 1)
            and np.all(e.sum(axis=1) == 1)
        )

    def in_sl(self) -> bool:
        return self.rows == self.cols and self.det() == 1

    # --- 比较与打印 ---

    def key(self) -> bytes:
        return self.entries.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.key()))

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"FieldMatrix({self.field!r}, {self.to_rows()})"


# === 函数式接口 ===

def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    return a * b


def matinv(a: FieldMatrix) -> FieldMatrix:
    return a.inverse()


def det(a: FieldMatrix) -> int:
    return a.det()


def transpose(a: FieldMatrix) -> FieldMatrix:
    return a.transpose()


def permutation_matrix(perm: Permutation, field: GaloisField) -> FieldMatrix:
    """P e_j = e_{π(j)}，因此 P_a P_b = P_{ab}"""
    n = perm.degree
    arr = np.zeros((n, n), dtype=np.int64)
    arr[list(perm.images), list(range(n))] = 1
    return FieldMatrix(field, arr)


def signed_permutation_matrix(perm: Permutation, field: GaloisField, negate: Iterable[int]) -> FieldMatrix:
    """P_π · diag(±1)，negate 中的坐标取 -1"""
    signs = [1] * perm.degree
    for i in negate:
        signs[i] = field.neg(1)
    return permutation_matrix(perm, field) * FieldMatrix.diagonal(field, signs)


def permutation_of(a: FieldMatrix) -> Permutation:
    """单项矩阵的底层置换"""
    rows = [int(np.flatnonzero(a.entries[:, j])[0]) for j in range(a.cols)]
    return Permutation(rows)


def sl_order(d: int, q: int) -> int:
    """|SL(d, q)| = q^{d(d-1)/2} ∏_{i=2}^{d} (q^i - 1)"""
    order = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        order *= q ** i - 1
    return order


def random_matrix(d: int, field: GaloisField, rng: random.Random) -> FieldMatrix:
    return FieldMatrix(field, [[rng.randrange(field.q) for _ in range(d)] for _ in range(d)])


def random_invertible(d: int, field: GaloisField, rng: random.Random) -> FieldMatrix:
    while True:
        a = random_matrix(d, field, rng)
        if a.det() != 0:
            return a


def random_sl(d: int, field: GaloisField, rng: random.Random) -> FieldMatrix:
    """随机可逆矩阵，首行乘以 det⁻¹"""
    a = random_invertible(d, field, rng)
    scale = [field.inv(a.det())] + [1] * (d - 1)
    return FieldMatrix.diagonal(field, scale) * a


def format_matrix(a: FieldMatrix) -> str:
    rows = "|".join(" ".join(a.field.format_element(int(x)) for x in row) for row in a.entries)
    return f"{a.rows},{a.field.q};{rows}"


def parse_matrix(text: str, field: Optional[GaloisField] = None) -> FieldMatrix:
    """解析 `d,q;row0|row1|...`"""
    try:
        header, body = text.strip().split(";", 1)
        d_text, q_text = header.split(",")
        d, q = int(d_text), int(q_text)
    except ValueError as e:
        raise ParseError(f"malformed matrix: {text!r}", cause=e)
    target = field or field_of_order(q)
    if target.q != q:
        raise FieldMismatch(f"matrix over GF({q}) given for {target!r}")
    rows = [row.split() for row in body.split("|")]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ParseError(f"matrix is not {d}x{d}: {text!r}")
    return FieldMatrix(target, [[parse_element(x, target).value for x in row] for row in rows])


__all__ = [
    "FieldMatrix",
    "matmul",
    "matinv",
    "det",
    "transpose",
    "permutation_matrix",
    "signed_permutation_matrix",
    "permutation_of",
    "sl_order",
    "random_matrix",
    "random_invertible",
    "random_sl",
    "format_matrix",
    "parse_matrix",
]
