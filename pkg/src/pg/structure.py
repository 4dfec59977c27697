"""
多重集的结构识别、闭式界与构造
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from gf.field import get_field, to_vector
from gf import linalg
from pg.geometry import GeometryError, Subspace, gauss, point_table
from pg.multiset import (PointMultiset, add, embed, scale, span, sub_checked)

logger = logging.getLogger(__name__)


class StructureKind(Enum):
    """结构标签类型"""
    SIMPLEX_MULTIPLE = "SimplexMultiple"
    AFFINE_MULTIPLE = "AffineMultiple"
    PROJECTIVE_BASE = "ProjectiveBase"
    OTHER = "Other"


@dataclass(frozen=True)
class StructureTag:
    """
    结构标签，附带构造性的见证子空间
      - SimplexMultiple: 𝓜 = λ·χ_K
      - AffineMultiple:  𝓜 = c·χ_{K\\E}，E 为 K 的超平面
      - ProjectiveBase:  𝓜 = χ_{B_n}
    """
    kind: StructureKind
    multiplier: int = 0
    subspace: Optional[Subspace] = None
    hyperplane: Optional[Subspace] = None
    size: int = 0

    @property
    def dim(self) -> int:
        return self.subspace.dim if self.subspace is not None else 0

    def describe(self) -> str:
        if self.kind is StructureKind.SIMPLEX_MULTIPLE:
            return f"{self.multiplier}·χ_K (dim K={self.dim})"
        if self.kind is StructureKind.AFFINE_MULTIPLE:
            return f"{self.multiplier}·χ_(K\\E) (dim K={self.dim})"
        if self.kind is StructureKind.PROJECTIVE_BASE:
            return f"B_{self.size}"
        return "other"


def lower_bound_space_mult(q: int, k: int, l: int, n: int, s: int) -> Fraction:
    """
    l 维子空间 K 的重数：若所有包含 K 的超平面重数均为 s，则
    𝓜(K) = s - (n-s)/(q-1) + (n-s)/(q^(k-l-1)(q-1))；若仅为下界 s，则上式为下界。
    """
    if not 1 <= l <= k - 2:
        raise GeometryError(f"需要 1 <= l <= k-2: l={l}, k={k}")
    diff = Fraction(n - s)
    return s - diff / (q - 1) + diff / (Fraction(q) ** (k - l - 1) * (q - 1))


def special_point_mult(q: int, r: int, l: int, k: int) -> Tuple[Fraction, Fraction]:
    """基数 q^l·[r+1-l]_q + q^r 的 q^r-可整除多重集 γ_1 的两种可能取值"""
    if not 0 <= l < r:
        raise GeometryError(f"需要 0 <= l < r: l={l}, r={r}")
    if k < 2:
        raise GeometryError(f"需要 k >= 2: k={k}")
    first = Fraction(q) ** l
    second = Fraction(q) ** r - (Fraction(q) ** l - Fraction(q) ** (2 + r - k)) / (q - 1)
    return first, second


def projective_base(n: int, q: int) -> PointMultiset:
    """PG(n-2, q) 中的射影基 e_1, ..., e_(n-1), e_1+...+e_(n-1)"""
    if n < 3:
        raise GeometryError(f"射影基要求 n >= 3: n={n}")
    k = n - 1
    vectors = list(np.eye(k, dtype=np.int64)) + [np.ones(k, dtype=np.int64)]
    return PointMultiset.from_vectors(q, vectors, k=k)


def _uniform(m: PointMultiset) -> int:
    values = set(mult for _, mult in m.items)
    return values.pop() if len(values) == 1 else 0


def _is_projective_base(m: PointMultiset) -> bool:
    n = len(m.items)
    if n < 3 or _uniform(m) != 1:
        return False
    coords = m.support_coords()
    f = get_field(m.q)
    if linalg.rank(coords, f) != n - 1:
        return False
    return all(linalg.rank(np.delete(coords, j, axis=0), f) == n - 1 for j in range(n))


def classify_structure(m: PointMultiset) -> StructureTag:
    """识别 λ·χ_K、c·χ_{K\\E}、χ_{B_n}；同时满足多个时按此顺序优先"""
    if not m.items:
        return StructureTag(StructureKind.OTHER)
    c = _uniform(m)
    k_space = span(m)
    d = k_space.dim
    support = set(int(i) for i in m.support)
    if c:
        if len(support) == gauss(d, m.q):
            return StructureTag(StructureKind.SIMPLEX_MULTIPLE, c, k_space, size=m.cardinality)
        if d >= 2 and len(support) == m.q ** (d - 1):
            rest = [int(i) for i in k_space.points() if int(i) not in support]
            e_space = Subspace.from_points(rest, m.k, m.q)
            if e_space.dim == d - 1 and len(rest) == gauss(d - 1, m.q):
                return StructureTag(StructureKind.AFFINE_MULTIPLE, c, k_space, e_space, m.cardinality)
    if _is_projective_base(m):
        return StructureTag(StructureKind.PROJECTIVE_BASE, 1, k_space, size=len(support))
    return StructureTag(StructureKind.OTHER, size=m.cardinality)


def build_from_tag(tag: StructureTag) -> PointMultiset:
    """由标签重建多重集（分类的逆运算）"""
    s = tag.subspace
    if tag.kind is StructureKind.SIMPLEX_MULTIPLE:
        return PointMultiset.chi(s, tag.multiplier)
    if tag.kind is StructureKind.AFFINE_MULTIPLE:
        return scale(sub_checked(PointMultiset.chi(s), PointMultiset.chi(tag.hyperplane)), tag.multiplier)
    if tag.kind is StructureKind.PROJECTIVE_BASE:
        return projective_base(tag.size, s.q)
    raise GeometryError("Other 标签不携带构造信息")


# ----------------------------------------------------------------------
# 构造
# ----------------------------------------------------------------------
def complement(m: PointMultiset, s: Subspace, c: int) -> PointMultiset:
    """c·χ_S - 𝓜，要求 𝓜 的支撑在 S 内且重数不超过 c"""
    return sub_checked(PointMultiset.chi(s, c), m)


def glue(m: PointMultiset, k_space: Subspace, extra: int = 1) -> PointMultiset:
    """
    𝓜 + χ_Z - q·χ_K，Z = K ⊕ <新增的 extra 个坐标>。
    要求 𝓜 >= (q-1)·χ_K；若 𝓜、q·χ_K、χ_Z 均 Δ-可整除，则结果亦然。
    """
    if extra < 1:
        raise GeometryError(f"extra 必须 >= 1: {extra}")
    k = m.k + extra
    base = embed(m, k)
    pad = np.zeros((k_space.dim, extra), dtype=np.int64)
    k_rows = np.concatenate([k_space.matrix(), pad], axis=1)
    new_rows = np.eye(k, dtype=np.int64)[m.k:]
    k_big = Subspace.span(list(k_rows), m.q, k)
    z_space = Subspace.span(list(k_rows) + list(new_rows), m.q, k)
    return sub_checked(add(base, PointMultiset.chi(z_space)), PointMultiset.chi(k_big, m.q))


def field_reduction(m: PointMultiset) -> PointMultiset:
    """
    F_(p^e) 上多重集在 F_p 上的像：每个点变为其全部 F_(p^e)-倍数构成的
    (e-1) 维 F_p-射影子空间，重数保持。
    """
    f = get_field(m.q)
    if f.is_prime:
        return m
    p, e = f.p, f.e
    k = m.k * e
    table = point_table(k, p)
    fp = get_field(p)
    counts = {}
    for v, mult in zip(m.support_coords(), m.mults):
        images = set()
        for lam in f.nonzero:
            w = f.mul_table[lam, v]
            flat = np.array([c for x in w for c in to_vector(int(x), f)], dtype=np.int64)
            images.add(int(table.lookup[table.encode(linalg.normalize(flat, fp))]))
        for idx in images:
            counts[idx] = counts.get(idx, 0) + int(mult)
    return PointMultiset.from_counts(p, k, counts)


def elliptic_quadric(q: int) -> PointMultiset:
    """PG(3,q) 中椭圆二次曲面 x0x1 + x2^2 + x2x3 + c·x3^2 = 0 的 q^2+1 个点"""
    f = get_field(q)
    c = next(c for c in f.nonzero
             if all(f.add_table[f.add_table[f.mul_table[t, t], t], c] != 0 for t in f.elements))
    coords = point_table(4, q).coords
    x0, x1, x2, x3 = coords.T
    val = f.add_table[f.mul_table[x0, x1], f.mul_table[x2, x2]]
    val = f.add_table[val, f.mul_table[x2, x3]]
    val = f.add_table[val, f.mul_table[c, f.mul_table[x3, x3]]]
    points = np.flatnonzero(val == 0)
    logger.debug(f"PG(3,{q}) 椭圆二次曲面: {len(points)} 个点")
    return PointMultiset.from_counts(q, 4, {int(i): 1 for i in points})


def desarguesian_spread(t: int, e: int, p: int = 2) -> Tuple[Subspace, ...]:
    """
    PG(t·e-1, p) 的 Desargues 型 (e-1)-维射影子空间扩散：
    PG(t-1, p^e) 的每个点经域约化得到一个元素。
    """
    q = p ** e
    f = get_field(q)
    out = []
    for v in point_table(t, q).coords:
        rows = []
        for lam in f.nonzero:
            w = f.mul_table[lam, v]
            rows.append([c for x in w for c in to_vector(int(x), f)])
        out.append(Subspace.span(rows, p, t * e))
    if any(s.dim != e for s in out) or not disjoint(out):
        raise GeometryError(f"PG({t * e - 1},{p}) 的扩散元素不是两两不交的 {e} 维子空间")
    return tuple(out)


def disjoint(subspaces) -> bool:
    """两两交为零空间"""
    for a, b in itertools.combinations(subspaces, 2):
        if a.meet(b).dim:
            return False
    return True
