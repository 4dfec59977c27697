"""
生成矩阵及其与点多重集的一一对应

文本格式：首行 "q k n"，随后 k 行，每行 n 个域元素符号（以空格分隔）。
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from gf.field import FieldError, get_field, parse_symbol, symbol
from gf import linalg
from pg.multiset import PointMultiset, span

logger = logging.getLogger(__name__)


class MatrixError(ValueError):
    """生成矩阵不合法"""


class NonSpanningError(MatrixError):
    """多重集未张成整个空间，无法得到满秩生成矩阵"""


@dataclass(frozen=True)
class GeneratorMatrix:
    """F_q 上 k×n 满秩生成矩阵；零列仅在 allow_zero_columns 时允许"""
    q: int
    entries: Tuple[Tuple[int, ...], ...]
    allow_zero_columns: bool = False

    def __post_init__(self):
        f = get_field(self.q)
        arr = self.array()
        if arr.shape[0] == 0:
            raise MatrixError("生成矩阵至少需要一行")
        if arr.size and (arr.min() < 0 or arr.max() >= f.q):
            raise MatrixError(f"矩阵含有不属于 F_{self.q} 的元素")
        if linalg.rank(arr, f) != arr.shape[0]:
            raise MatrixError(f"生成矩阵不满秩: k={arr.shape[0]}")
        if not self.allow_zero_columns and (~arr.any(axis=0)).any():
            raise MatrixError("矩阵含零列（需显式允许）")

    @classmethod
    def from_array(cls, q: int, arr, allow_zero_columns: bool = False) -> "GeneratorMatrix":
        a = np.asarray(arr, dtype=np.int64)
        if a.ndim != 2:
            raise MatrixError(f"生成矩阵必须是二维数组: shape={a.shape}")
        return cls(q, tuple(tuple(int(x) for x in row) for row in a), allow_zero_columns)

    def array(self) -> np.ndarray:
        if not self.entries:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(self.entries, dtype=np.int64)

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def effective_length(self) -> int:
        return int(self.array().any(axis=0).sum())

    def __repr__(self) -> str:
        return f"GeneratorMatrix(q={self.q}, k={self.k}, n={self.n})"


def to_multiset(g: GeneratorMatrix) -> PointMultiset:
    """规范化的非零列构成的多重集"""
    cols = [c for c in g.array().T if c.any()]
    if not cols:
        return PointMultiset.empty(g.q, g.k)
    return PointMultiset.from_vectors(g.q, cols, k=g.k)


def from_multiset(m: PointMultiset) -> GeneratorMatrix:
    """按点序展开重数得到的生成矩阵；多重集必须张成全空间"""
    if not m.items or span(m).dim != m.k:
        raise NonSpanningError(f"多重集未张成 PG({m.k - 1},{m.q})")
    return GeneratorMatrix.from_array(m.q, m.columns())


def repeat(g: GeneratorMatrix, d: int) -> GeneratorMatrix:
    """d 重复制码（列重复 d 次）"""
    if d < 1:
        raise MatrixError(f"重复次数必须 >= 1: {d}")
    return GeneratorMatrix.from_array(g.q, np.tile(g.array(), (1, d)), g.allow_zero_columns)


def format_matrix(g: GeneratorMatrix) -> str:
    f = get_field(g.q)
    lines = [f"{g.q} {g.k} {g.n}"]
    for row in g.entries:
        lines.append(" ".join(symbol(x, f) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, allow_zero_columns: bool = True) -> GeneratorMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise MatrixError("矩阵文本为空")
    try:
        q, k, n = (int(x) for x in lines[0].split())
    except ValueError as e:
        raise MatrixError(f"无法解析表头: {lines[0]!r}") from e
    f = get_field(q)
    if len(lines) != k + 1:
        raise MatrixError(f"期望 {k} 行矩阵数据, 实际 {len(lines) - 1} 行")
    rows = []
    for ln in lines[1:]:
        tokens = ln.split() if " " in ln else list(ln)
        if len(tokens) != n:
            raise MatrixError(f"期望 {n} 列, 实际 {len(tokens)} 列: {ln!r}")
        try:
            rows.append([parse_symbol(t, f) for t in tokens])
        except FieldError as e:
            raise MatrixError(str(e)) from e
    return GeneratorMatrix.from_array(q, rows, allow_zero_columns)
