"""
码的半线性等价规范形

把多重集编码成带色图后交给 nauty（pynauty）求规范标号：
  - 每个支撑点 P 的 q-1 个非零倍数 a·P 各为一个顶点；
  - 每个超平面（规范化线性型 h）的 q-1 个倍数 b·h 各为一个顶点；
  - a·P 与 b·h 相邻当且仅当 (b·h)(a·P) = 1；同一纤维内的顶点两两相邻；
  - 点顶点按重数分色（升序），超平面顶点单独一色。
对 q <= 4，F_q^* 的自同构恰为 Galois 群，图同构与半线性映射一一对应。
由规范标号选出的向量组确定坐标，再在 Frobenius 像中取字典序最小者。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import pynauty

from gf.field import frobenius_table, get_field
from gf import linalg
from codes.matrix import GeneratorMatrix, MatrixError, to_multiset
from pg.geometry import point_table
from pg.multiset import PointMultiset, span

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def _compose(a: Perm, b: Perm) -> Perm:
    """先作用 a 再作用 b"""
    return tuple(b[x] for x in a)


def _inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class _StabilizerLevel:
    """稳定化子链的一层：基点、本层强生成元、基点轨道的陪集代表"""

    def __init__(self, base_point: int, identity: Perm):
        self.base_point = base_point
        self.identity = identity
        self.generators: List[Perm] = []
        self.transversal: Dict[int, Perm] = {base_point: identity}
        self.next: Optional["_StabilizerLevel"] = None

    def sift(self, g: Perm) -> None:
        """g 固定上层全部基点；筛不到底时，余项作为强生成元加入途经的每一层"""
        level = self
        passed = [self]
        while True:
            image = g[level.base_point]
            if image not in level.transversal:
                for lv in reversed(passed):
                    lv.add_generator(g)
                return
            g = _compose(g, _inverse(level.transversal[image]))
            if g == level.identity:
                return
            if level.next is None:
                level.next = _StabilizerLevel(next(i for i, x in enumerate(g) if x != i), level.identity)
            level = level.next
            passed.append(level)

    def add_generator(self, g: Perm) -> None:
        self.generators.append(g)
        pending = [(p, g) for p in list(self.transversal)]
        while pending:
            p, s = pending.pop()
            image = s[p]
            t = _compose(self.transversal[p], s)
            if image not in self.transversal:
                self.transversal[image] = t
                pending.extend((image, other) for other in self.generators)
                continue
            # Schreier 生成元，固定本层基点
            h = _compose(t, _inverse(self.transversal[image]))
            if h == self.identity:
                continue
            if self.next is None:
                self.next = _StabilizerLevel(next(i for i, x in enumerate(h) if x != i), self.identity)
            self.next.sift(h)


def permutation_group_order(generators) -> int:
    """置换群的精确阶（Schreier-Sims），群阶为各层基点轨道长度之积"""
    gens = [tuple(g) for g in generators]
    gens = [g for g in gens if any(x != i for i, x in enumerate(g))]
    if not gens:
        return 1
    identity = tuple(range(len(gens[0])))
    root = _StabilizerLevel(next(i for i, x in enumerate(gens[0]) if x != i), identity)
    for g in gens:
        root.sift(g)
    order = 1
    level: Optional[_StabilizerLevel] = root
    while level is not None:
        order *= len(level.transversal)
        level = level.next
    return order


@dataclass(frozen=True)
class CanonicalWitness:
    """canonical = diag(scalars) 作用下的 A · θ^u(G)[:, column_map]"""
    row_transform: Tuple[Tuple[int, ...], ...]
    frobenius_power: int
    column_map: Tuple[int, ...]
    column_scalars: Tuple[int, ...]


@dataclass(frozen=True)
class Canonization:
    """多重集的规范化结果（census 内部使用）"""
    key: Tuple
    matrix: np.ndarray            # 规范化且已按重数展开的 k×n 矩阵
    fiber_order: Tuple[int, ...]  # 支撑点编号按规范顺序
    orbit: Dict[int, int]         # 支撑点编号 -> 自同构轨道代表
    aut_generators: Tuple[Tuple[int, ...], ...]
    chosen_scalars: Dict[int, int]
    basis_inverse: np.ndarray
    frobenius_power: int

    def designated_point(self, mults: Dict[int, int]) -> int:
        """规范顺序下第一个重数最大的点"""
        top = max(mults.values())
        return next(p for p in self.fiber_order if mults[p] == top)

    def same_orbit(self, a: int, b: int) -> bool:
        return self.orbit[a] == self.orbit[b]

    @property
    def aut_order(self) -> int:
        return permutation_group_order(self.aut_generators)


@dataclass(frozen=True)
class CanonicalForm:
    key: Tuple
    matrix: GeneratorMatrix
    witness: CanonicalWitness
    aut_generators: Tuple[Tuple[int, ...], ...]

    @property
    def aut_order(self) -> int:
        """自同构群的精确阶"""
        return permutation_group_order(self.aut_generators)

    def apply_witness(self, g: GeneratorMatrix) -> GeneratorMatrix:
        """把见证变换作用到 g 上；对规范化所用的 g 结果等于 self.matrix"""
        return GeneratorMatrix.from_array(g.q, apply_canonical_witness(self.witness, g))


def _build_graph(m: PointMultiset):
    f = get_field(m.q)
    c = m.q - 1
    support = m.support
    s = len(support)
    coords = m.support_coords()
    normals = point_table(m.k, m.q).coords
    values = linalg.matmul(normals, coords.T, f)  # values[j, i] = h_j(P_i)
    offset = s * c
    total = offset + normals.shape[0] * c
    adjacency: Dict[int, List[int]] = {v: [] for v in range(total)}

    for a in range(1, m.q):
        # a·P_i 与 b·h_j 相邻 <=> b = (a·h_j(P_i))^(-1)
        js, is_ = np.nonzero(values)
        bs = f.inv_table[f.mul_table[a, values[js, is_]]]
        for j, i, b in zip(js.tolist(), is_.tolist(), bs.tolist()):
            u, v = i * c + a - 1, offset + j * c + b - 1
            adjacency[u].append(v)
            adjacency[v].append(u)

    if c > 1:
        for base in range(0, total, c):
            for x in range(base, base + c):
                adjacency[x].extend(y for y in range(base, base + c) if y != x)

    by_mult: Dict[int, set] = {}
    for i, mult in enumerate(m.mults.tolist()):
        by_mult.setdefault(mult, set()).update(range(i * c, i * c + c))
    coloring = [by_mult[v] for v in sorted(by_mult)]
    coloring.append(set(range(offset, total)))
    graph = pynauty.Graph(number_of_vertices=total, directed=False,
                          adjacency_dict=adjacency, vertex_coloring=coloring)
    return graph, offset


def canonize(m: PointMultiset) -> Canonization:
    """张成的非空多重集的规范化"""
    if not m.items:
        raise MatrixError("空多重集没有规范形")
    if span(m).dim != m.k:
        raise MatrixError("规范化要求多重集张成全空间")
    f = get_field(m.q)
    c = m.q - 1
    graph, offset = _build_graph(m)
    lab = pynauty.canon_label(graph)
    position = np.empty(len(lab), dtype=np.int64)
    position[np.asarray(lab, dtype=np.int64)] = np.arange(len(lab))
    generators, _, _, orbits, _ = pynauty.autgrp(graph)

    support = m.support.tolist()
    coords = m.support_coords()
    mults = m.mults.tolist()

    # 每个纤维取规范位置最小的副本
    fibers = []
    for i in range(len(support)):
        pos = position[i * c:(i + 1) * c]
        a = int(np.argmin(pos)) + 1
        fibers.append((int(pos.min()), i, a))
    fibers.sort()

    chosen = np.array([f.mul_table[a, coords[i]] for _, i, a in fibers], dtype=np.int64)
    basis_rows: List[np.ndarray] = []
    for vec in chosen:
        trial = basis_rows + [vec]
        if linalg.rank(np.array(trial), f) == len(trial):
            basis_rows.append(vec)
        if len(basis_rows) == m.k:
            break
    basis_inverse = linalg.inverse(np.array(basis_rows, dtype=np.int64).T, f)
    coeffs = linalg.matmul(basis_inverse, chosen.T, f)

    best: Optional[Tuple] = None
    for u in range(f.e):
        image, _ = linalg.normalize_columns(linalg.apply_field_map(coeffs, frobenius_table(u, f)), f)
        flat = tuple(image.flatten().tolist())
        if best is None or flat < best[0]:
            best = (flat, u, image)
    _, u, image = best

    fiber_mults = [mults[i] for _, i, _ in fibers]
    expanded = np.repeat(image, fiber_mults, axis=1)
    key = (m.q, m.k, int(expanded.shape[1]), tuple(fiber_mults), expanded.tobytes())
    orbit = {support[i]: int(orbits[i * c]) for i in range(len(support))}
    return Canonization(
        key=key,
        matrix=expanded,
        fiber_order=tuple(support[i] for _, i, _ in fibers),
        orbit=orbit,
        aut_generators=tuple(tuple(int(x) for x in g) for g in generators),
        chosen_scalars={support[i]: a for _, i, a in fibers},
        basis_inverse=basis_inverse,
        frobenius_power=u,
    )


def canonical_key(m: PointMultiset) -> Tuple:
    return canonize(m).key


def canonical_form(g: GeneratorMatrix) -> CanonicalForm:
    """半线性等价下的规范生成矩阵及其见证变换"""
    f = get_field(g.q)
    m = to_multiset(g)
    can = canonize(m)
    frob = frobenius_table(can.frobenius_power, f)
    row_transform = linalg.apply_field_map(can.basis_inverse, frob)
    x = linalg.matmul(row_transform, linalg.apply_field_map(g.array(), frob), f)

    table = point_table(g.k, g.q)
    columns_of: Dict[int, List[int]] = {}
    for j, col in enumerate(g.array().T):
        if col.any():
            idx = int(table.lookup[table.encode(linalg.normalize(col, f))])
            columns_of.setdefault(idx, []).append(j)

    column_map: List[int] = []
    for p in can.fiber_order:
        column_map.extend(columns_of[p])
    scalars = []
    for t, j in enumerate(column_map):
        target = can.matrix[:, t]
        lead = int(np.flatnonzero(target)[0])
        scalars.append(int(f.mul_table[target[lead], f.inv_table[x[lead, j]]]))

    witness = CanonicalWitness(
        row_transform=tuple(tuple(int(v) for v in row) for row in row_transform),
        frobenius_power=can.frobenius_power,
        column_map=tuple(column_map),
        column_scalars=tuple(scalars),
    )
    return CanonicalForm(can.key, GeneratorMatrix.from_array(g.q, can.matrix), witness, can.aut_generators)


def apply_canonical_witness(w: CanonicalWitness, g: GeneratorMatrix) -> np.ndarray:
    f = get_field(g.q)
    frob = frobenius_table(w.frobenius_power, f)
    x = linalg.matmul(np.array(w.row_transform, dtype=np.int64),
                      linalg.apply_field_map(g.array(), frob), f)
    cols = x[:, list(w.column_map)]
    return f.mul_table[np.array(w.column_scalars, dtype=np.int64)[None, :], cols]


def automorphism_group_order(g: GeneratorMatrix) -> int:
    """保持码不变的半线性变换群的阶（作用于 F_q^k）"""
    return canonize(to_multiset(g)).aut_order


def equivalent(g1: GeneratorMatrix, g2: GeneratorMatrix) -> bool:
    if (g1.q, g1.k, g1.effective_length) != (g2.q, g2.k, g2.effective_length):
        return False
    return canonical_form(g1).key == canonical_form(g2).key
