"""
射影空间 PG(k-1, q) 的点与子空间

点是首个非零坐标为 1 的规范化向量，按坐标字典序固定编号；
超平面用对偶法向量表示，编号与点列表一致。
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Tuple

import numpy as np

from gf.field import FieldSpec, get_field
from gf import linalg

logger = logging.getLogger(__name__)


class GeometryError(ValueError):
    """射影几何对象不合法"""


class AmbientMismatchError(GeometryError):
    """两个对象不在同一个射影空间中"""


def gauss(k: int, q: int) -> int:
    """[k]_q = (q^k - 1)/(q - 1)"""
    if k < 0:
        raise GeometryError(f"维数不能为负: k={k}")
    return (q ** k - 1) // (q - 1)


@dataclass(frozen=True)
class PointTable:
    """PG(k-1, q) 的全部点及其反查表"""
    q: int
    k: int
    coords: np.ndarray = field(repr=False, compare=False)   # shape ([k]_q, k)
    lookup: np.ndarray = field(repr=False, compare=False)   # q 进制编码 -> 点编号, 非规范向量为 -1
    weights: np.ndarray = field(repr=False, compare=False)  # q 进制编码的位权

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    def encode(self, vectors: np.ndarray) -> np.ndarray:
        return np.asarray(vectors, dtype=np.int64) @ self.weights


@lru_cache(maxsize=None)
def point_table(k: int, q: int) -> PointTable:
    if k < 1:
        raise GeometryError(f"射影空间维数需 k >= 1: k={k}")
    rows = []
    for vec in itertools.product(range(q), repeat=k):
        nz = next((c for c in vec if c), 0)
        if nz == 1:
            rows.append(vec)
    coords = np.array(rows, dtype=np.int64)
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    lookup = np.full(q ** k, -1, dtype=np.int64)
    lookup[coords @ weights] = np.arange(len(rows))
    logger.debug(f"PG({k - 1},{q}) 共 {len(rows)} 个点")
    return PointTable(q, k, coords, lookup, weights)


def projective_points(k: int, q: int) -> np.ndarray:
    return point_table(k, q).coords


def hyperplanes(k: int, q: int) -> np.ndarray:
    """超平面的法向量列表（与点列表相同）"""
    return point_table(k, q).coords


def point_index(vec, q: int) -> int:
    """任意非零向量所在点的编号"""
    f = get_field(q)
    v = linalg.normalize(np.asarray(vec, dtype=np.int64), f)
    table = point_table(len(v), q)
    return int(table.lookup[table.encode(v)])


def point_indices(vectors: np.ndarray, q: int) -> np.ndarray:
    """批量求规范化向量（按行）的点编号"""
    vectors = np.asarray(vectors, dtype=np.int64)
    table = point_table(vectors.shape[1], q)
    idx = table.lookup[table.encode(vectors)]
    if (idx < 0).any():
        raise GeometryError("存在未规范化或为零的向量")
    return idx


def point_coords(index: int, k: int, q: int) -> Tuple[int, ...]:
    return tuple(int(c) for c in point_table(k, q).coords[index])


def incidence_zero_mask(normals: np.ndarray, vectors: np.ndarray, f: FieldSpec) -> np.ndarray:
    """mask[i, j] 为真当且仅当向量 j 落在法向量 i 的超平面上"""
    return linalg.matmul(np.asarray(normals), np.asarray(vectors).T, f) == 0


@dataclass(frozen=True)
class Subspace:
    """以简化行阶梯形为唯一基的子空间"""
    q: int
    k: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable, q: int, k: int = None) -> "Subspace":
        f = get_field(q)
        rows = [list(v) for v in vectors]
        if not rows:
            if k is None:
                raise GeometryError("空向量组需要显式给出 k")
            return cls(q, k, ())
        m = linalg.as_matrix(rows, f)
        if k is not None and m.shape[1] != k:
            raise AmbientMismatchError(f"向量长度 {m.shape[1]} 与 k={k} 不符")
        r, _ = linalg.rref(m, f)
        return cls(q, m.shape[1], tuple(tuple(int(x) for x in row) for row in r))

    @classmethod
    def ambient(cls, k: int, q: int) -> "Subspace":
        return cls(q, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def from_points(cls, indices: Iterable[int], k: int, q: int) -> "Subspace":
        coords = point_table(k, q).coords
        return cls.span([coords[i] for i in indices], q, k)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> FieldSpec:
        return get_field(self.q)

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.k)

    def pivots(self) -> List[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def vectors(self) -> np.ndarray:
        """子空间内全部规范化向量（即全部点），共 [dim]_q 个"""
        if self.dim == 0:
            return np.zeros((0, self.k), dtype=np.int64)
        coeffs = point_table(self.dim, self.q).coords
        return linalg.matmul(coeffs, self.matrix(), self.field)

    def points(self) -> np.ndarray:
        return np.sort(point_indices(self.vectors(), self.q))

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64).reshape(1, -1)
        if self.dim == 0:
            return not v.any()
        return linalg.rank(np.concatenate([self.matrix(), v]), self.field) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def normals(self) -> np.ndarray:
        """所有包含该子空间的超平面的法向量张成的空间的一组基"""
        if self.dim == 0:
            return np.eye(self.k, dtype=np.int64)
        return linalg.kernel(self.matrix(), self.field)

    def join(self, other: "Subspace") -> "Subspace":
        if (self.q, self.k) != (other.q, other.k):
            raise AmbientMismatchError("子空间不在同一空间中")
        return Subspace.span(list(self.basis) + list(other.basis), self.q, self.k)

    def meet(self, other: "Subspace") -> "Subspace":
        if (self.q, self.k) != (other.q, other.k):
            raise AmbientMismatchError("子空间不在同一空间中")
        normals = np.concatenate([self.normals(), other.normals()])
        if normals.shape[0] == 0:
            return Subspace.ambient(self.k, self.q)
        return Subspace.span(list(linalg.kernel(normals, self.field)), self.q, self.k)

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, k={self.k}, dim={self.dim})"


def subspaces_of_dim(k: int, q: int, dim: int) -> List[Subspace]:
    """PG(k-1,q) 中全部 dim 维子空间（以 RREF 去重，仅用于小参数）"""
    seen = {}
    coords = point_table(k, q).coords
    for combo in itertools.combinations(range(len(coords)), dim):
        s = Subspace.span([coords[i] for i in combo], q, k)
        if s.dim == dim:
            seen.setdefault(s.basis, s)
    return [seen[b] for b in sorted(seen)]
