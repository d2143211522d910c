"""
共轭类覆盖半径

以类 C 为生成集在 SL(d, q) 的 Cayley 图上做 BFS：
- 矩阵按 entries 的 q 进制编码成整数键，距离存放在稠密 int8 数组中；
- 前沿按 BFS_CHUNK_SIZE 行分块批量相乘，np.unique 去重；
- 键空间超过 BFS_MAX_KEYS 时抛出 GroupTooLarge。

big 配置下的 SL(4,3) 不做全量 BFS，而是用 C² 的布尔键表对抽样元素判定距离。
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from src.core.exceptions import BoundExceeded, GroupTooLarge, ValidationError
from src.core.logging_setup import get_logger
from src.core.settings import get_settings
from src.fields.galois import GaloisField
from src.matrices.matrix import FieldMatrix, permutation_matrix, random_sl, sl_order
from src.permutations.brenner import standard_involution

logger = get_logger(__name__)


@dataclass(frozen=True)
class SpecialLinearGroup:
    """可枚举的 SL(d, q)"""
    d: int
    field: GaloisField

    @property
    def order(self) -> int:
        return sl_order(self.d, self.field.q)

    @property
    def key_space(self) -> int:
        return self.field.q ** (self.d * self.d)

    def describe(self) -> str:
        return f"SL({self.d},{self.field.q})"

    def _weights(self) -> np.ndarray:
        return np.array([self.field.q ** i for i in range(self.d * self.d)], dtype=np.int64)

    def encode(self, arr: np.ndarray) -> np.ndarray:
        flat = np.asarray(arr, dtype=np.int64).reshape(-1, self.d * self.d)
        return flat @ self._weights()

    def decode(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        digits = (keys[:, None] // self._weights()[None, :]) % self.field.q
        return digits.reshape(-1, self.d, self.d)

    def identity(self) -> np.ndarray:
        return np.eye(self.d, dtype=np.int64)[None]

    def center_keys(self) -> np.ndarray:
        """标量矩阵 λI，λ^d = 1"""
        scalars = [x for x in self.field.nonzero() if self.field.power(x, self.d) == 1]
        return self.encode(np.stack([np.eye(self.d, dtype=np.int64) * x for x in scalars]))

    def transvections(self) -> List[FieldMatrix]:
        """I + x^k E_ij，x^k 取遍 GF(q) 在素域上的基"""
        gens = []
        for i in range(self.d):
            for j in range(self.d):
                if i != j:
                    for k in range(self.field.k):
                        gens.append(FieldMatrix.elementary(self.field, self.d, i, j, self.field.p ** k))
        return gens


def class_c_representative(field: GaloisField, n: int) -> FieldMatrix:
    """4n 点上 2^{2n} 型对合的置换矩阵"""
    return permutation_matrix(standard_involution(4 * n), field)


def in_class_c(a: FieldMatrix, n: int) -> bool:
    """
    C(4n, q) 的判定：a² = I 且 rank(a - I) = 2n

    特征 2 时 a² = I 等价于 (a - I)² = 0。
    """
    if a.d != 4 * n:
        return False
    identity = a.identity_like()
    return a * a == identity and (a - identity).rank() == 2 * n


def conjugacy_class(rep: FieldMatrix) -> np.ndarray:
    """以平延为生成元的共轭轨道，返回 (|C|, d, d) 编码数组（按键排序）"""
    group = SpecialLinearGroup(rep.d, rep.field)
    field_ = rep.field
    gens = group.transvections()
    g = np.stack([x.entries for x in gens])
    g_inv = np.stack([x.inverse().entries for x in gens])

    frontier = rep.entries[None].astype(np.int64)
    keys = group.encode(frontier)
    members = [frontier]
    while len(frontier):
        conj = field_.matmul(field_.matmul(g[None], frontier[:, None]), g_inv[None]).reshape(-1, rep.d, rep.d)
        new_keys, index = np.unique(group.encode(conj), return_index=True)
        fresh = ~np.isin(new_keys, keys)
        frontier = conj[index[fresh]]
        keys = np.concatenate([keys, new_keys[fresh]])
        members.append(frontier)
    everything = np.concatenate(members)
    order = np.argsort(group.encode(everything))
    return everything[order]


@dataclass
class CoveringReport:
    """BFS 结果"""
    group: str
    class_name: str
    class_size: int
    profile: List[int]
    radius: int
    noncentral_radius: int
    distances: Optional[np.ndarray] = field(default=None, repr=False)
    group_ref: Optional[SpecialLinearGroup] = field(default=None, repr=False)

    def distance(self, a: FieldMatrix) -> int:
        return int(self.distances[self.group_ref.encode(a.entries)[0]])

    def to_dict(self) -> Dict[str, object]:
        return {
            "group": self.group,
            "class": self.class_name,
            "class_size": self.class_size,
            "profile": self.profile,
            "radius": self.radius,
            "noncentral_radius": self.noncentral_radius,
        }


def _check_rep(rep: FieldMatrix) -> None:
    e = rep.entries
    if not np.any(e - np.diag(np.diag(e))) and len(set(np.diag(e).tolist())) == 1:
        raise ValidationError("class representative must be non-central")


def class_covering_radius(
    group: SpecialLinearGroup,
    class_rep: FieldMatrix,
    bound: int = 5,
    class_name: Optional[str] = None,
) -> CoveringReport:
    """
    以 class_rep 的共轭类为生成集做 BFS，返回距离分布与半径

    Raises:
        GroupTooLarge: 键空间超过 BFS_MAX_KEYS
        BoundExceeded: 非中心元素距离 > bound，或任意元素距离 > 2·bound
    """
    _check_rep(class_rep)
    config = get_settings().matrix
    if group.key_space > config.bfs_max_keys:
        raise GroupTooLarge(details={"group": group.describe(), "keys": group.key_space, "cap": config.bfs_max_keys})

    field_, d = group.field, group.d
    members = conjugacy_class(class_rep)
    logger.info(f"🔄 BFS 开始: {group.describe()}，|C|={len(members)}")

    dist = np.full(group.key_space, -1, dtype=np.int8)
    frontier = group.identity()
    dist[group.encode(frontier)] = 0
    profile = [1]
    level = 0
    while len(frontier):
        level += 1
        found = []
        for start in range(0, len(frontier), config.bfs_chunk_size):
            chunk = frontier[start:start + config.bfs_chunk_size]
            prods = field_.matmul(chunk[:, None], members[None]).reshape(-1, d, d)
            keys, index = np.unique(group.encode(prods), return_index=True)
            fresh = dist[keys] < 0
            dist[keys[fresh]] = level
            found.append(prods[index[fresh]])
        frontier = np.concatenate(found) if found else np.empty((0, d, d), dtype=np.int64)
        if len(frontier):
            profile.append(len(frontier))

    radius = len(profile) - 1
    central = dist[group.center_keys()]
    counts = list(profile)
    for k in central:
        counts[int(k)] -= 1
    noncentral_radius = max((k for k, c in enumerate(counts) if c > 0), default=0)

    report = CoveringReport(
        group=group.describe(),
        class_name=class_name or "C",
        class_size=len(members),
        profile=profile,
        radius=radius,
        noncentral_radius=noncentral_radius,
        distances=dist,
        group_ref=group,
    )
    logger.info(f"✅ BFS 完成: {report.to_dict()}")
    if noncentral_radius > bound or radius > 2 * bound:
        raise BoundExceeded(details=report.to_dict())
    return report


def sampled_class_distances(
    group: SpecialLinearGroup,
    class_rep: FieldMatrix,
    samples: int,
    rng: random.Random,
    bound: int = 5,
) -> List[int]:
    """
    抽样元素到单位元的距离（上限 bound）

    预先计算 C² 的布尔键表：g ∈ C^k（k ≤ 4）通过 C^{k-2}·g ∩ C² 判定，
    k ≥ 5 时逐个左乘类元素降到 k - 1。

    Raises:
        BoundExceeded: 某个样本在 bound 步内不可达
    """
    _check_rep(class_rep)
    config = get_settings().matrix
    if group.key_space > config.bfs_max_keys:
        raise GroupTooLarge(details={"group": group.describe(), "keys": group.key_space, "cap": config.bfs_max_keys})
    field_, d = group.field, group.d
    members = conjugacy_class(class_rep)
    in_c = np.zeros(group.key_space, dtype=bool)
    in_c[group.encode(members)] = True
    in_c2 = np.zeros(group.key_space, dtype=bool)
    rows = max(1, (1 << 20) // len(members))
    for start in range(0, len(members), rows):
        prods = field_.matmul(members[start:start + rows, None], members[None])
        in_c2[group.encode(prods)] = True
    squares = group.decode(np.flatnonzero(in_c2))
    logger.info(f"✅ C² 表已生成: {group.describe()}，|C²|={len(squares)}")

    def hits(left: np.ndarray, g: np.ndarray) -> bool:
        for start in range(0, len(left), rows):
            prods = field_.matmul(left[start:start + rows], g[None])
            if in_c2[group.encode(prods)].any():
                return True
        return False

    def within(g: np.ndarray, k: int) -> bool:
        """g ∈ C^k（k ≥ 3）"""
        if k == 3:
            return hits(members, g)
        if k == 4:
            return hits(squares, g)
        return any(within(field_.matmul(c, g), k - 1) for c in members)

    def distance(g: np.ndarray) -> Optional[int]:
        if np.array_equal(g, np.eye(d, dtype=np.int64)):
            return 0
        key = group.encode(g)[0]
        for k in range(1, bound + 1):
            if k == 1 and in_c[key] or k == 2 and in_c2[key] or k >= 3 and within(g, k):
                return k
        return None

    out = []
    for i in range(samples):
        g = random_sl(d, field_, rng).entries
        k = distance(g)
        if k is None:
            raise BoundExceeded(
                f"sample {i} is not a product of at most {bound} class elements",
                details={"group": group.describe(), "bound": bound, "sample": i},
            )
        out.append(k)
    return out


__all__ = [
    "SpecialLinearGroup",
    "CoveringReport",
    "class_covering_radius",
    "class_c_representative",
    "in_class_c",
    "conjugacy_class",
    "sampled_class_distances",
]
