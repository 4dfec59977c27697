"""
二元 Δ-可整除点集（Γ = 1 的原子）的显式构造

  Δ = 1: 单点
  Δ = 2: 射影基 B_n (3 <= n <= 6)
  Δ = 4: 平面(7)、仿射立体(8)、沿 t 条扩散线粘合的立体(15+t, t <= 5)
  Δ = 8: 立体(15)、AG(4,2)(16)、PG(4,2)(31)、AG(5,2)(32)、
         粘合后挖去仿射 4-空间(49)、F_256^* 中 5 阶子群的 10 条轨道(50)、
         F_4 椭圆二次曲面的二元像(51)、沿 t 个扩散平面粘合的 PG(5,2)(63+t, t <= 9)
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from pg.geometry import Subspace, gauss
from pg.multiset import PointMultiset, add, sub_checked
from pg.structure import (desarguesian_spread, elliptic_quadric, field_reduction, glue,
                          projective_base)

logger = logging.getLogger(__name__)


def _space(k: int, dim: int = None) -> Subspace:
    """PG(k-1,2) 中由前 dim 个坐标向量张成的子空间"""
    dim = k if dim is None else dim
    return Subspace.span(list(np.eye(k, dtype=np.int64)[:dim]), 2, k)


def _pad(s: Subspace, k: int) -> Subspace:
    m = s.matrix()
    padded = np.concatenate([m, np.zeros((m.shape[0], k - s.k), dtype=np.int64)], axis=1)
    return Subspace.span(list(padded), s.q, k)


def glued_along_spread(k: int, element_dim: int, t: int) -> PointMultiset:
    """PG(k-1,2) 沿 Desargues 扩散中 t 个两两不交的子空间依次粘合"""
    spread = desarguesian_spread(k // element_dim, element_dim)
    if t > len(spread):
        raise ValueError(f"扩散只有 {len(spread)} 个元素: t={t}")
    m = PointMultiset.chi(_space(k))
    for s in spread[:t]:
        m = glue(m, _pad(s, m.k), extra=1)
    return m


def affine_space(k: int) -> PointMultiset:
    """AG(k-1,2) = PG(k-1,2) 去掉一个超平面"""
    return sub_checked(PointMultiset.chi(_space(k)), PointMultiset.chi(_space(k, k - 1)))


def glued_minus_affine() -> PointMultiset:
    """
    PG(5,2) = E1 ⊕ E2 沿两个平面粘合得 65 点，再减去 χ_W - χ_H：
    H = L1 ⊕ L2（L_i 为 E_i 中的直线），W = H + <a1 + a2>（a_i ∈ E_i \\ L_i）。
    W ∩ E_i = L_i ⊆ H，故仿射 4-空间 W \\ H 落在支撑内，结果为 49 点
    """
    eye6 = np.eye(6, dtype=np.int64)
    m = glue(PointMultiset.chi(_space(6)), Subspace.span(list(eye6[:3]), 2, 6))
    m = glue(m, _pad(Subspace.span(list(eye6[3:]), 2, 6), m.k))
    e = np.eye(m.k, dtype=np.int64)
    h_rows = [e[0], e[1], e[3], e[4]]
    h_space = Subspace.span(h_rows, 2, m.k)
    w_space = Subspace.span(h_rows + [e[2] + e[5]], 2, m.k)
    return sub_checked(add(m, PointMultiset.chi(h_space)), PointMultiset.chi(w_space))


# F_256 = F_2[x]/(x^8 + x^4 + x^3 + x^2 + 1)，整数的第 i 位为 x^i 的系数
_F256_FEEDBACK = (0, 2, 3, 4)
# 5 阶子群轨道的代表元，10 条轨道的并是 8-可整除的（重量 16/24/32）
ORBIT_REPS_50 = (1, 7, 17, 21, 29, 33, 36, 51, 65, 105)


def _f256_companion() -> np.ndarray:
    c = np.zeros((8, 8), dtype=np.int64)
    for i in range(7):
        c[i + 1, i] = 1
    c[list(_F256_FEEDBACK), 7] = 1
    return c


def singer_orbits(reps, order: int = 5) -> PointMultiset:
    """F_256^* 中 order 阶子群作用下若干轨道的并，视为 PG(7,2) 的点集"""
    if 255 % order:
        raise ValueError(f"{order} 不整除 255")
    step = np.eye(8, dtype=np.int64)
    c = _f256_companion()
    for _ in range(255 // order):
        step = step @ c % 2
    vectors = []
    for r in reps:
        v = np.array([(r >> i) & 1 for i in range(8)], dtype=np.int64)
        for _ in range(order):
            vectors.append(v)
            v = step @ v % 2
    return PointMultiset.from_vectors(2, vectors)


def distinct_points(n: int, q: int = 2) -> PointMultiset:
    """
    字典序前 n 个点，k 取满足 [k]_q >= n 的最小值；
    前 [k-1]_q 个点恰为一个超平面，故 n > [k-1]_q 时张成全空间
    """
    k = 1
    while gauss(k, q) < n:
        k += 1
    return PointMultiset.from_counts(q, k, {i: 1 for i in range(n)})


def _atoms_delta4() -> Dict[int, Callable[[], PointMultiset]]:
    atoms = {7: lambda: PointMultiset.chi(_space(3)), 8: lambda: affine_space(4)}
    for t in range(6):
        atoms[15 + t] = (lambda t=t: glued_along_spread(4, 2, t))
    return atoms


def _atoms_delta8() -> Dict[int, Callable[[], PointMultiset]]:
    atoms = {
        15: lambda: PointMultiset.chi(_space(4)),
        16: lambda: affine_space(5),
        31: lambda: PointMultiset.chi(_space(5)),
        32: lambda: affine_space(6),
        49: glued_minus_affine,
        50: lambda: singer_orbits(ORBIT_REPS_50),
        51: lambda: field_reduction(elliptic_quadric(4)),
    }
    for t in range(10):
        atoms[63 + t] = (lambda t=t: glued_along_spread(6, 3, t))
    return atoms


_FIXED_ATOMS = {4: _atoms_delta4(), 8: _atoms_delta8()}

# 更大的射影基维数太高，不作为原子
MAX_BASE = 6


def _builders(delta: int) -> Dict[int, Callable[[], PointMultiset]]:
    """Δ-可整除原子的构造函数；Δ'-可整除 (Δ | Δ') 的原子同样可用"""
    if delta == 1:
        return {1: lambda: distinct_points(1)}
    builders: Dict[int, Callable[[], PointMultiset]] = {}
    if delta == 2:
        builders.update({n: (lambda n=n: projective_base(n, 2)) for n in range(3, MAX_BASE + 1)})
    for d in sorted(_FIXED_ATOMS, reverse=True):
        if d % delta == 0:
            builders.update(_FIXED_ATOMS[d])
    return builders


def atom_sizes(delta: int, upto: int) -> List[int]:
    """Δ-可整除射影原子的可用基数（不超过 upto）"""
    return sorted(n for n in _builders(delta) if n <= upto)


@lru_cache(maxsize=None)
def atom(delta: int, n: int) -> PointMultiset:
    """基数为 n、Γ = 1 的 Δ-可整除点集"""
    try:
        builder = _builders(delta)[n]
    except KeyError:
        raise KeyError(f"没有基数 {n} 的 {delta}-可整除原子构造") from None
    m = builder()
    logger.debug(f"构造 {delta}-可整除原子: n={m.cardinality}, k={m.k}")
    return m


Part = Tuple[int, int, int]


def decompose(delta: int, n: int, gamma: int) -> List[Part]:
    """
    把 n 拆成若干 "2^j × (Δ/2^j)-可整除原子" 之和，每部分的 γ_1 = 2^j <= gamma。
    先求部分数最少，再求直和维数最小。返回 [(倍数, 原子的 Δ, 原子基数)]，无解返回 []。
    """
    parts: List[Part] = []
    mult = 1
    while mult <= gamma and delta % mult == 0:
        for size in atom_sizes(delta // mult, n // mult):
            parts.append((mult, delta // mult, size))
        mult *= 2
    parts.sort(key=lambda p: (-p[0] * p[2], p))

    best: List[Optional[Tuple[int, int]]] = [None] * (n + 1)
    choice: List[Optional[Part]] = [None] * (n + 1)
    best[0] = (0, 0)
    for total in range(1, n + 1):
        for part in parts:
            rest = total - part[0] * part[2]
            if rest < 0 or best[rest] is None:
                continue
            cost = (best[rest][0] + 1, best[rest][1] + atom(part[1], part[2]).k)
            if best[total] is None or cost < best[total]:
                best[total] = cost
                choice[total] = part
    if best[n] is None:
        return []
    out = []
    rest = n
    while rest:
        out.append(choice[rest])
        rest -= choice[rest][0] * choice[rest][2]
    return sorted(out, key=lambda p: (-p[0] * p[2], p))
