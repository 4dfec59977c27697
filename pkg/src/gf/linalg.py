"""
F_q 上的矩阵运算（元素为 gf.field 的下标表示，矩阵为 int64 的 numpy 数组）
"""

from typing import List, Tuple

import numpy as np

from gf.field import FieldSpec, FieldError


def as_matrix(rows, f: FieldSpec) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.size and (m.min() < 0 or m.max() >= f.q):
        raise FieldError(f"矩阵含有不属于 F_{f.q} 的元素")
    return m


def scale_vector(c: int, v: np.ndarray, f: FieldSpec) -> np.ndarray:
    return f.mul_table[c, v]


def add_vectors(u: np.ndarray, v: np.ndarray, f: FieldSpec) -> np.ndarray:
    return f.add_table[u, v]


def matmul(a: np.ndarray, b: np.ndarray, f: FieldSpec) -> np.ndarray:
    """矩阵乘法 A·B"""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise FieldError(f"矩阵维度不匹配: {a.shape} x {b.shape}")
    if f.is_prime:
        return (a @ b) % f.q
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for l in range(a.shape[1]):
        acc = f.add_table[acc, f.mul_table[a[:, l][:, None], b[l, :][None, :]]]
    return acc


def normalize(v: np.ndarray, f: FieldSpec) -> np.ndarray:
    """把向量缩放为首个非零分量等于 1"""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise FieldError("零向量无法规范化")
    return f.mul_table[f.inv_table[v[nz[0]]], v]


def normalize_columns(m: np.ndarray, f: FieldSpec) -> Tuple[np.ndarray, np.ndarray]:
    """逐列规范化，返回 (规范化后的矩阵, 每列乘上的标量)；零列保持不变，标量记为 1"""
    m = np.asarray(m, dtype=np.int64)
    out = m.copy()
    scalars = np.ones(m.shape[1], dtype=np.int64)
    for j in range(m.shape[1]):
        nz = np.flatnonzero(m[:, j])
        if nz.size:
            c = f.inv_table[m[nz[0], j]]
            scalars[j] = c
            out[:, j] = f.mul_table[c, m[:, j]]
    return out, scalars


def rref(m: np.ndarray, f: FieldSpec) -> Tuple[np.ndarray, List[int]]:
    """简化行阶梯形，返回 (非零行组成的矩阵, 主元列)"""
    r = np.array(m, dtype=np.int64, copy=True)
    if r.ndim == 1:
        r = r.reshape(1, -1)
    rows, cols = r.shape
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = f.mul_table[f.inv_table[r[row, col]], r[row]]
        for i in range(rows):
            if i != row and r[i, col]:
                r[i] = f.add_table[r[i], f.mul_table[f.neg_table[r[i, col]], r[row]]]
        pivots.append(col)
        row += 1
    return r[:row], pivots


def rank(m: np.ndarray, f: FieldSpec) -> int:
    if np.asarray(m).size == 0:
        return 0
    return len(rref(m, f)[1])


def kernel(m: np.ndarray, f: FieldSpec) -> np.ndarray:
    """右零空间 {x : M x = 0} 的一组基（按行给出）"""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(m, f)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = f.neg_table[r[row, fc]]
    return basis


def coordinates(basis_rref: np.ndarray, pivots: List[int], vectors: np.ndarray,
                f: FieldSpec) -> np.ndarray:
    """
    把行向量用简化阶梯形基表示。对每个向量 v 返回系数 c 使 c·B = v；
    v 不在张成空间内时抛出 FieldError。
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, -1)
    coeffs = vectors[:, pivots]
    recon = matmul(coeffs, basis_rref, f) if len(pivots) else np.zeros_like(vectors)
    if not np.array_equal(recon, vectors):
        raise FieldError("向量不在给定子空间内")
    return coeffs


def inverse(m: np.ndarray, f: FieldSpec) -> np.ndarray:
    k = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64), np.eye(k, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, f)
    if pivots[:k] != list(range(k)) or r.shape[0] < k:
        raise FieldError("矩阵不可逆")
    return r[:k, k:]


def random_invertible(k: int, f: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    """均匀随机的 k×k 可逆矩阵（拒绝采样）"""
    while True:
        m = rng.integers(0, f.q, size=(k, k), dtype=np.int64)
        if rank(m, f) == k:
            return m


def apply_field_map(m: np.ndarray, table: np.ndarray) -> np.ndarray:
    """逐元素应用域自同构（如 Frobenius 表）"""
    return table[np.asarray(m, dtype=np.int64)]
