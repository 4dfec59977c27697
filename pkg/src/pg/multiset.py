"""
点的多重集 𝓜 及其运算

多重集以 (点编号, 重数) 的有序元组存储，不可变且可哈希；
超平面重数一次性向量化计算并缓存。
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from gf.field import get_field, parse_symbol, symbol
from gf import linalg
from pg.geometry import (AmbientMismatchError, GeometryError, Subspace, gauss,
                         incidence_zero_mask, point_indices, point_table)

logger = logging.getLogger(__name__)


class NegativeMultiplicityError(GeometryError):
    """逐点相减出现负重数"""

    def __init__(self, point: Tuple[int, ...], value: int):
        super().__init__(f"点 {point} 的重数将变为 {value}")
        self.point = point
        self.value = value


@dataclass(frozen=True)
class PointMultiset:
    """PG(k-1, q) 上的点多重集"""
    q: int
    k: int
    items: Tuple[Tuple[int, int], ...] = ()

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------
    @classmethod
    def from_counts(cls, q: int, k: int, counts: Mapping[int, int]) -> "PointMultiset":
        size = point_table(k, q).size
        items = []
        for idx, mult in sorted(counts.items()):
            if mult < 0:
                raise NegativeMultiplicityError(tuple(point_table(k, q).coords[idx]), mult)
            if not 0 <= idx < size:
                raise GeometryError(f"点编号 {idx} 超出 PG({k - 1},{q})")
            if mult:
                items.append((int(idx), int(mult)))
        return cls(q, k, tuple(items))

    @classmethod
    def from_vectors(cls, q: int, vectors, mults: Optional[Iterable[int]] = None,
                     k: Optional[int] = None) -> "PointMultiset":
        """由任意非零向量（可未规范化）构造，零向量忽略"""
        f = get_field(q)
        rows = [np.asarray(v, dtype=np.int64) for v in vectors]
        if k is None:
            if not rows:
                raise GeometryError("空向量组需要显式给出 k")
            k = len(rows[0])
        mults = list(mults) if mults is not None else [1] * len(rows)
        counts: Dict[int, int] = {}
        table = point_table(k, q)
        for v, mult in zip(rows, mults):
            if len(v) != k:
                raise AmbientMismatchError(f"向量长度 {len(v)} 与 k={k} 不符")
            if not v.any():
                continue
            idx = int(table.lookup[table.encode(linalg.normalize(v, f))])
            counts[idx] = counts.get(idx, 0) + int(mult)
        return cls.from_counts(q, k, counts)

    @classmethod
    def empty(cls, q: int, k: int) -> "PointMultiset":
        return cls(q, k, ())

    @classmethod
    def chi(cls, s: Subspace, mult: int = 1) -> "PointMultiset":
        """子空间的特征函数 χ_S（可带统一重数）"""
        return cls.from_counts(s.q, s.k, {int(i): mult for i in s.points()})

    # ------------------------------------------------------------------
    # 基本属性
    # ------------------------------------------------------------------
    @property
    def cardinality(self) -> int:
        return sum(m for _, m in self.items)

    @property
    def support(self) -> np.ndarray:
        return np.array([i for i, _ in self.items], dtype=np.int64)

    @property
    def mults(self) -> np.ndarray:
        return np.array([m for _, m in self.items], dtype=np.int64)

    def support_coords(self) -> np.ndarray:
        if not self.items:
            return np.zeros((0, self.k), dtype=np.int64)
        return point_table(self.k, self.q).coords[self.support]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.items)

    def dense(self) -> np.ndarray:
        out = np.zeros(point_table(self.k, self.q).size, dtype=np.int64)
        for i, m in self.items:
            out[i] = m
        return out

    def mult_at(self, vec) -> int:
        table = point_table(self.k, self.q)
        v = linalg.normalize(np.asarray(vec, dtype=np.int64), get_field(self.q))
        return self.as_dict().get(int(table.lookup[table.encode(v)]), 0)

    def columns(self) -> np.ndarray:
        """按点序展开重数后的列向量（k × #𝓜）"""
        coords = self.support_coords()
        if not self.items:
            return np.zeros((self.k, 0), dtype=np.int64)
        return np.repeat(coords, self.mults, axis=0).T

    def __len__(self) -> int:
        return self.cardinality

    def __repr__(self) -> str:
        return f"PointMultiset(q={self.q}, k={self.k}, n={self.cardinality}, support={len(self.items)})"


@dataclass(frozen=True)
class Spectrum:
    """超平面重数分布 a_i"""
    a: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.a)

    def __getitem__(self, i: int) -> int:
        return self.as_dict().get(i, 0)


@dataclass(frozen=True)
class PointDistribution:
    """点重数分布 λ_i（含 λ_0）"""
    lam: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.lam)

    def __getitem__(self, i: int) -> int:
        return self.as_dict().get(i, 0)

    def vector(self, upto: int) -> Tuple[int, ...]:
        """(λ_1, ..., λ_upto)"""
        d = self.as_dict()
        return tuple(d.get(i, 0) for i in range(1, upto + 1))


def _same_space(m1: PointMultiset, m2: PointMultiset) -> None:
    if (m1.q, m1.k) != (m2.q, m2.k):
        raise AmbientMismatchError(f"多重集不在同一空间: (q={m1.q},k={m1.k}) vs (q={m2.q},k={m2.k})")


# ----------------------------------------------------------------------
# 超平面与子空间重数
# ----------------------------------------------------------------------
@lru_cache(maxsize=4096)
def hyperplane_multiplicities(m: PointMultiset) -> np.ndarray:
    """全部超平面的重数 𝓜(H)，顺序与 hyperplanes(k, q) 一致"""
    table = point_table(m.k, m.q)
    if not m.items:
        out = np.zeros(table.size, dtype=np.int64)
    else:
        mask = incidence_zero_mask(table.coords, m.support_coords(), get_field(m.q))
        out = mask.astype(np.int64) @ m.mults
    out.setflags(write=False)
    return out


def multiplicity(m: PointMultiset, s: Subspace) -> int:
    """𝓜(S) = S 中各点重数之和"""
    if (s.q, s.k) != (m.q, m.k):
        raise AmbientMismatchError(f"子空间 (q={s.q},k={s.k}) 与多重集 (q={m.q},k={m.k}) 不在同一空间")
    if s.dim == 0 or not m.items:
        return 0
    inside = set(int(i) for i in s.points())
    return sum(mult for i, mult in m.items if i in inside)


def is_divisible(m: PointMultiset, delta: int) -> bool:
    """所有超平面满足 𝓜(H) ≡ #𝓜 (mod Δ)；空多重集对任意 Δ 可整除"""
    if delta < 1:
        raise GeometryError(f"Δ 必须 >= 1: {delta}")
    if delta == 1 or not m.items:
        return True
    hm = hyperplane_multiplicities(m)
    return bool(np.all((m.cardinality - hm) % delta == 0))


def max_divisor(m: PointMultiset) -> int:
    """最大的 Δ 使 𝓜 为 Δ-可整除（空多重集返回 0）"""
    if not m.items:
        return 0
    weights = m.cardinality - hyperplane_multiplicities(m)
    return int(np.gcd.reduce(weights[weights > 0])) if (weights > 0).any() else 0


def spectrum(m: PointMultiset) -> Spectrum:
    values, counts = np.unique(hyperplane_multiplicities(m), return_counts=True)
    return Spectrum(tuple((int(v), int(c)) for v, c in zip(values, counts)))


def point_distribution(m: PointMultiset) -> PointDistribution:
    counts: Dict[int, int] = {}
    for _, mult in m.items:
        counts[mult] = counts.get(mult, 0) + 1
    counts[0] = point_table(m.k, m.q).size - len(m.items)
    return PointDistribution(tuple(sorted(counts.items())))


def gamma1(m: PointMultiset) -> int:
    return max((mult for _, mult in m.items), default=0)


def gamma(m: PointMultiset, i: int) -> int:
    """γ_i：所有 i 维子空间重数的最大值"""
    if not 0 <= i <= m.k:
        raise GeometryError(f"需要 0 <= i <= k: i={i}, k={m.k}")
    if i == 0 or not m.items:
        return 0
    if i == 1:
        return gamma1(m)
    if i == m.k:
        return m.cardinality
    if i == m.k - 1:
        return int(hyperplane_multiplicities(m).max())
    coords = m.support_coords()
    mults = m.mults
    best = 0
    size = min(i, len(m.items))
    f = get_field(m.q)
    for combo in itertools.combinations(range(len(m.items)), size):
        s = Subspace.span([coords[j] for j in combo], m.q, m.k)
        normals = s.normals()
        inside = np.all(linalg.matmul(normals, coords.T, f) == 0, axis=0)
        best = max(best, int(mults[inside].sum()))
    return best


def _gauss_fraction(k: int, q: int) -> Fraction:
    return (Fraction(q) ** k - 1) / (q - 1)


def standard_equations_check(m: PointMultiset) -> bool:
    """标准方程组自检（非张成的多重集先限制到其张成空间）"""
    if m.items and span(m).dim < m.k:
        m = to_span(m)
    q, k, n = m.q, m.k, m.cardinality
    a = spectrum(m).as_dict()
    lam = point_distribution(m).as_dict()
    checks = [
        sum(a.values()) == gauss(k, q),
        sum(i * c for i, c in a.items()) == n * gauss(k - 1, q),
        sum(lam.values()) == gauss(k, q),
        sum(i * c for i, c in lam.items()) == n,
        sum(comb(i, 2) * c for i, c in a.items())
        == comb(n, 2) * _gauss_fraction(k - 2, q) + Fraction(q) ** (k - 2) * sum(comb(i, 2) * c for i, c in lam.items()),
    ]
    if not all(checks):
        logger.error(f"标准方程校验失败: {m} -> {checks}")
    return all(checks)


# ----------------------------------------------------------------------
# 限制、张成、投影
# ----------------------------------------------------------------------
def span(m: PointMultiset) -> Subspace:
    return Subspace.span(list(m.support_coords()), m.q, m.k)


def restrict(m: PointMultiset, s: Subspace, recoordinatize: bool = False) -> PointMultiset:
    """𝓜|_S；recoordinatize 时以 S 的 RREF 基坐标重新嵌入 PG(dim S - 1, q)"""
    if (s.q, s.k) != (m.q, m.k):
        raise AmbientMismatchError("限制的子空间与多重集不在同一空间")
    if s.dim == 0:
        return PointMultiset.empty(m.q, 1 if recoordinatize else m.k)
    inside = set(int(i) for i in s.points())
    kept = {i: mult for i, mult in m.items if i in inside}
    if not recoordinatize:
        return PointMultiset.from_counts(m.q, m.k, kept)
    coords = point_table(m.k, m.q).coords
    pivots = s.pivots()
    vectors = [coords[i][pivots] for i in kept]
    return PointMultiset.from_vectors(m.q, vectors, list(kept.values()), k=s.dim)


def to_span(m: PointMultiset) -> PointMultiset:
    """限制到张成空间并重新坐标化，得到张成的多重集"""
    if not m.items:
        return m
    return restrict(m, span(m), recoordinatize=True)


def project(m: PointMultiset, qpt) -> PointMultiset:
    """过点 Q 的投影：PG(k-1,q) -> PG(k-2,q)，Q 上的重数丢弃"""
    if m.k < 2:
        raise GeometryError(f"投影要求 k >= 2: k={m.k}")
    f = get_field(m.q)
    qv = linalg.normalize(np.asarray(qpt, dtype=np.int64), f)
    j = int(np.flatnonzero(qv)[0])
    coords = m.support_coords()
    images, mults = [], []
    for v, mult in zip(coords, m.mults):
        w = f.add_table[v, f.mul_table[f.neg_table[v[j]], qv]]
        w = np.delete(w, j)
        if w.any():
            images.append(w)
            mults.append(int(mult))
    return PointMultiset.from_vectors(m.q, images, mults, k=m.k - 1)


# ----------------------------------------------------------------------
# 组合运算
# ----------------------------------------------------------------------
def embed(m: PointMultiset, k: int) -> PointMultiset:
    """在右侧补零坐标嵌入更高维空间"""
    if k < m.k:
        raise GeometryError(f"无法嵌入更低维空间: {m.k} -> {k}")
    if k == m.k:
        return m
    coords = m.support_coords()
    padded = np.concatenate([coords, np.zeros((coords.shape[0], k - m.k), dtype=np.int64)], axis=1)
    return PointMultiset.from_vectors(m.q, padded, m.mults, k=k)


def direct_sum(m1: PointMultiset, m2: PointMultiset) -> PointMultiset:
    """𝓜₁ ⊕ 𝓜₂，坐标空间为 k1 + k2 维"""
    if m1.q != m2.q:
        raise AmbientMismatchError(f"域不一致: q={m1.q} vs q={m2.q}")
    k = m1.k + m2.k
    c1, c2 = m1.support_coords(), m2.support_coords()
    left = np.concatenate([c1, np.zeros((c1.shape[0], m2.k), dtype=np.int64)], axis=1)
    right = np.concatenate([np.zeros((c2.shape[0], m1.k), dtype=np.int64), c2], axis=1)
    vectors = np.concatenate([left, right])
    mults = np.concatenate([m1.mults, m2.mults])
    if vectors.shape[0] == 0:
        return PointMultiset.empty(m1.q, k)
    return PointMultiset.from_vectors(m1.q, vectors, mults, k=k)


def scale(m: PointMultiset, c: int) -> PointMultiset:
    if c < 0:
        raise GeometryError(f"缩放系数不能为负: {c}")
    return PointMultiset.from_counts(m.q, m.k, {i: c * mult for i, mult in m.items})


def add(m1: PointMultiset, m2: PointMultiset) -> PointMultiset:
    _same_space(m1, m2)
    counts = m1.as_dict()
    for i, mult in m2.items:
        counts[i] = counts.get(i, 0) + mult
    return PointMultiset.from_counts(m1.q, m1.k, counts)


def sub_checked(m1: PointMultiset, m2: PointMultiset) -> PointMultiset:
    """逐点相减，出现负重数时抛出 NegativeMultiplicityError 并指明该点"""
    _same_space(m1, m2)
    counts = m1.as_dict()
    coords = point_table(m1.k, m1.q).coords
    for i, mult in m2.items:
        value = counts.get(i, 0) - mult
        if value < 0:
            raise NegativeMultiplicityError(tuple(int(x) for x in coords[i]), value)
        counts[i] = value
    return PointMultiset.from_counts(m1.q, m1.k, counts)


def transform(m: PointMultiset, matrix: np.ndarray) -> PointMultiset:
    """用可逆矩阵 A 作用于每个点（列向量 v -> A v）"""
    f = get_field(m.q)
    if not m.items:
        return m
    images = linalg.matmul(np.asarray(matrix, dtype=np.int64), m.support_coords().T, f).T
    return PointMultiset.from_vectors(m.q, images, m.mults, k=m.k)


# ----------------------------------------------------------------------
# 文本格式："q k" 表头，之后每行 "坐标:重数"
# ----------------------------------------------------------------------
def format_multiset(m: PointMultiset) -> str:
    f = get_field(m.q)
    lines = [f"{m.q} {m.k}"]
    coords = point_table(m.k, m.q).coords
    for i, mult in m.items:
        lines.append("".join(symbol(int(c), f) for c in coords[i]) + f":{mult}")
    return "\n".join(lines) + "\n"


def parse_multiset(text: str) -> PointMultiset:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise GeometryError("多重集文本为空")
    try:
        q, k = (int(x) for x in lines[0].split())
    except ValueError as e:
        raise GeometryError(f"无法解析表头: {lines[0]!r}") from e
    f = get_field(q)
    vectors: List[List[int]] = []
    mults: List[int] = []
    for ln in lines[1:]:
        coords, _, mult = ln.partition(":")
        if len(coords) != k or not mult:
            raise GeometryError(f"无法解析多重集行: {ln!r}")
        vectors.append([parse_symbol(c, f) for c in coords])
        mults.append(int(mult))
    if not vectors:
        return PointMultiset.empty(q, k)
    indices = point_indices(np.array(vectors, dtype=np.int64), q)
    counts: Dict[int, int] = {}
    for idx, mult in zip(indices, mults):
        counts[int(idx)] = counts.get(int(idx), 0) + mult
    return PointMultiset.from_counts(q, k, counts)
