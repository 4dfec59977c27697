"""
Δ-可整除码的同构剔除穷举

按维数逐层提升：维数 k 的码 𝓜 取规范的最大重数点 Q，过 Q 投影得到维数 k-1、
基数 n - γ_1 的 Δ-可整除父码；反过来，父码的每个点 P' 沿直线 <Q,P'> 提升到
q 个点上，提升后的 Δ-可整除性化为模 Δ 的同余方程组，用中间相遇法求解。
子码只有当 Q 落在规范指定点的自同构轨道中时才被接受（规范扩张）。
"""

import itertools
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from codes.canonical import canonize
from codes.matrix import GeneratorMatrix, to_multiset
from codes.weights import BudgetExceededError
from gf import linalg
from gf.field import get_field
from lengths.expansion import is_length_feasible, power_exponent, ward_reduce
from pg.geometry import point_index
from pg.multiset import PointMultiset, scale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusKey:
    q: int
    delta: int
    n: int
    k: int
    gamma_cap: Optional[int] = None

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError(f"Δ 必须 >= 1: {self.delta}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"要求 1 <= k <= n: k={self.k}, n={self.n}")
        if self.gamma_cap is not None and self.gamma_cap < 1:
            raise ValueError(f"gamma_cap 必须 >= 1: {self.gamma_cap}")

    def normalized(self) -> "CensusKey":
        """γ 上限不小于 n 时等价于不设上限"""
        if self.gamma_cap is not None and self.gamma_cap >= self.n:
            return replace(self, gamma_cap=None)
        return self

    def describe(self) -> str:
        cap = "inf" if self.gamma_cap is None else self.gamma_cap
        return f"q={self.q} Δ={self.delta} n={self.n} k={self.k} γ<={cap}"


@dataclass(frozen=True)
class Budget:
    """节点数与墙钟时间上限；None 表示不限"""
    nodes: Optional[int] = None
    seconds: Optional[float] = None
    mitm_rows: int = 1 << 21


class BudgetTracker:
    """多线程共享的预算计数"""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.reason: Optional[str] = None
        self._start = time.monotonic()
        self._lock = threading.Lock()

    def charge(self, count: int = 1) -> bool:
        with self._lock:
            self.nodes += count
            if self.reason is None:
                if self.budget.nodes is not None and self.nodes > self.budget.nodes:
                    self.reason = "nodes"
                elif self.budget.seconds is not None and time.monotonic() - self._start > self.budget.seconds:
                    self.reason = "seconds"
            return self.reason is None

    def mark(self, reason: str) -> None:
        with self._lock:
            if self.reason is None:
                self.reason = reason

    @property
    def exhausted(self) -> bool:
        return self.reason is not None

    def limits(self) -> Dict[str, Any]:
        return {
            "reason": self.reason,
            "nodes_used": self.nodes,
            "budget_nodes": self.budget.nodes,
            "budget_seconds": self.budget.seconds,
        }


@dataclass(frozen=True)
class CensusRecord:
    key: CensusKey
    reps: Tuple[GeneratorMatrix, ...]
    partial: bool = False
    limits: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def count(self) -> int:
        return len(self.reps)

    def multisets(self) -> List[PointMultiset]:
        return [to_multiset(g) for g in self.reps]


# ----------------------------------------------------------------------
# 提升方程的中间相遇求解
# ----------------------------------------------------------------------
def compositions(total: int, parts: int, cap: int) -> List[Tuple[int, ...]]:
    """total 拆成 parts 个 [0, cap] 内整数的全部有序拆分"""
    if parts == 1:
        return [(total,)] if total <= cap else []
    out = []
    for first in range(min(total, cap), -1, -1):
        out.extend((first,) + rest for rest in compositions(total - first, parts - 1, cap))
    return out


def _combine(options: List[np.ndarray], width: int, delta: int) -> Tuple[np.ndarray, np.ndarray]:
    vecs = np.zeros((1, width), dtype=np.int64)
    idx = np.zeros((1, 0), dtype=np.int64)
    for opt in options:
        c = opt.shape[0]
        vecs = ((vecs[:, None, :] + opt[None, :, :]) % delta).reshape(-1, width)
        idx = np.concatenate([np.repeat(idx, c, axis=0),
                              np.tile(np.arange(c, dtype=np.int64), idx.shape[0])[:, None]], axis=1)
    return vecs, idx


def meet_in_the_middle(options: List[np.ndarray], target: np.ndarray, delta: int,
                       row_limit: int) -> List[Tuple[int, ...]]:
    """
    options[i] 为第 i 个变量各取值的贡献向量（c_i × H）。
    返回所有使贡献之和 ≡ target (mod Δ) 的取值下标组合，按字典序排序。
    """
    width = target.shape[0]
    order = sorted(range(len(options)), key=lambda i: options[i].shape[0], reverse=True)
    left: List[int] = []
    right: List[int] = []
    lsize = rsize = 1
    for i in order:
        if lsize <= rsize:
            left.append(i)
            lsize *= options[i].shape[0]
        else:
            right.append(i)
            rsize *= options[i].shape[0]
    if max(lsize, rsize) > row_limit:
        raise BudgetExceededError(f"中间相遇表 {max(lsize, rsize)} 行超出上限 {row_limit}")

    lvecs, lidx = _combine([options[i] for i in left], width, delta)
    rvecs, ridx = _combine([options[i] for i in right], width, delta)
    table: Dict[bytes, List[int]] = {}
    for j, row in enumerate(lvecs):
        table.setdefault(row.tobytes(), []).append(j)
    need = (target[None, :] - rvecs) % delta

    out = []
    for j, row in enumerate(need):
        for i in table.get(row.tobytes(), ()):
            choice = [0] * len(options)
            for pos, var in enumerate(left):
                choice[var] = int(lidx[i, pos])
            for pos, var in enumerate(right):
                choice[var] = int(ridx[j, pos])
            out.append(tuple(choice))
    return sorted(out)


# ----------------------------------------------------------------------
# 普查引擎
# ----------------------------------------------------------------------
class CensusEngine:
    """
    维数递归的普查引擎。完整结果在进程内记忆；给出 store 时同时读写磁盘缓存。
    同一层的父码在线程池中并行提升，合并后按规范键排序。
    """

    def __init__(self, budget: Optional[Budget] = None, threads: Optional[int] = None, store=None):
        self.budget = budget or Budget()
        self.tracker = BudgetTracker(self.budget)
        self.threads = threads or os.cpu_count() or 1
        self.store = store
        self._memo: Dict[CensusKey, CensusRecord] = {}

    def enumerate(self, key: CensusKey, stop_after: Optional[int] = None) -> CensusRecord:
        key = key.normalized()
        if key in self._memo:
            return self._memo[key]
        if self.store is not None:
            cached = self.store.load(key)
            if cached is not None:
                logger.info(f"缓存命中: {key.describe()} ({cached.count} 个)")
                self._memo[key] = cached
                return cached

        p_power, d = ward_reduce(key.q, key.delta)
        if d > 1:
            found, partial = self._ward(key, p_power, d, stop_after)
        elif key.k == 1:
            found, partial = self._base(key), False
        else:
            found, partial = self._lift(key, stop_after)

        reps = tuple(GeneratorMatrix.from_array(key.q, found[ck]) for ck in sorted(found))
        partial = partial or self.tracker.exhausted
        record = CensusRecord(key, reps, partial, self.tracker.limits() if partial else {})
        if partial:
            logger.warning(f"{key.describe()}: 预算耗尽, 仅得到部分结果 {record.count} 个")
        elif stop_after is None:
            self._memo[key] = record
            if self.store is not None:
                self.store.store(record)
        logger.debug(f"{key.describe()}: {record.count} 个等价类")
        return record

    # ------------------------------------------------------------------
    def _base(self, key: CensusKey) -> Dict[Tuple, np.ndarray]:
        if key.n % key.delta or (key.gamma_cap is not None and key.n > key.gamma_cap):
            return {}
        can = canonize(PointMultiset.from_counts(key.q, 1, {0: key.n}))
        return {can.key: can.matrix}

    def _ward(self, key: CensusKey, p_power: int, d: int,
              stop_after: Optional[int]) -> Tuple[Dict[Tuple, np.ndarray], bool]:
        """Δ = p^e·d：d 重复制 p^e-可整除码"""
        if key.n % d or key.k > key.n // d:
            return {}, False
        cap = None if key.gamma_cap is None else key.gamma_cap // d
        if cap == 0:
            return {}, False
        sub = self.enumerate(CensusKey(key.q, p_power, key.n // d, key.k, cap), stop_after)
        found = {}
        for m in sub.multisets():
            can = canonize(scale(m, d))
            found[can.key] = can.matrix
        return found, sub.partial

    def _lift(self, key: CensusKey, stop_after: Optional[int]) -> Tuple[Dict[Tuple, np.ndarray], bool]:
        q, k, n = key.q, key.k, key.n
        r, _ = power_exponent(q, key.delta)
        top = n - (k - 1)
        if key.gamma_cap is not None:
            top = min(top, key.gamma_cap)
        found: Dict[Tuple, np.ndarray] = {}
        partial = False
        for m_q in range(1, top + 1):
            n_parent = n - m_q
            if r and not is_length_feasible(n_parent, q, r):
                continue
            parent = self.enumerate(CensusKey(q, key.delta, n_parent, k - 1, q * m_q))
            partial = partial or parent.partial
            if not parent.reps:
                continue
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                futures = {executor.submit(self._children, m, m_q, key): i
                           for i, m in enumerate(parent.multisets())}
                for future in as_completed(futures):
                    found.update(future.result())
            logger.debug(f"{key.describe()}: m_Q={m_q}, {parent.count} 个父码, 累计 {len(found)} 个")
            if self.tracker.exhausted:
                return found, True
            if stop_after is not None and len(found) >= stop_after:
                break
        return found, partial

    def _children(self, parent: PointMultiset, m_q: int, key: CensusKey) -> Dict[Tuple, np.ndarray]:
        """父码沿 Q = e_k 的全部提升中被规范扩张接受者"""
        if self.tracker.exhausted:
            return {}
        q, k, delta = key.q, key.k, key.delta
        f = get_field(q)
        coords = parent.support_coords()
        mults = parent.mults.tolist()
        normals = np.array(list(itertools.product(range(q), repeat=k - 1)), dtype=np.int64)
        # 法向量 (h', 1) 的超平面含 (P', t) 当且仅当 t = -h'·P'
        tvals = f.neg_table[linalg.matmul(normals, coords.T, f)]

        choices, options = [], []
        for i, mult in enumerate(mults):
            comps = compositions(mult, q, m_q)
            if not comps:
                return {}
            arr = np.array(comps, dtype=np.int64)
            choices.append(comps)
            options.append(arr[:, tvals[:, i]] % delta)
        n_mod = key.n % delta
        target = np.full(normals.shape[0], n_mod, dtype=np.int64)
        try:
            solutions = meet_in_the_middle(options, target, delta, self.budget.mitm_rows)
        except BudgetExceededError as e:
            logger.warning(f"{key.describe()}: {e}")
            self.tracker.mark("mitm_rows")
            return {}

        q_vec = np.zeros(k, dtype=np.int64)
        q_vec[-1] = 1
        q_index = point_index(q_vec, q)
        out: Dict[Tuple, np.ndarray] = {}
        for sol in solutions:
            if not self.tracker.charge():
                break
            vectors, weights = [q_vec], [m_q]
            for i, c in enumerate(sol):
                for t, y in enumerate(choices[i][c]):
                    if y:
                        vectors.append(np.append(coords[i], t))
                        weights.append(y)
            child = PointMultiset.from_vectors(q, vectors, weights, k=k)
            can = canonize(child)
            if not can.same_orbit(q_index, can.designated_point(child.as_dict())):
                continue
            out.setdefault(can.key, can.matrix)
        logger.debug(f"父码 n={parent.cardinality}: {len(solutions)} 个提升, 接受 {len(out)} 个 (目标余数 {n_mod})")
        return out


def enumerate_codes(key: CensusKey, budget: Optional[Budget] = None, threads: Optional[int] = None,
                    store=None) -> CensusRecord:
    """参数为 key 的全部张成 Δ-可整除码的等价类代表"""
    engine = CensusEngine(budget, threads, store)
    record = engine.enumerate(key)
    logger.info(f"普查 {key.describe()}: {record.count} 个等价类"
                + (" (部分结果)" if record.partial else ""))
    return record


def find_witness(q: int, delta: int, n: int, gamma_cap: int, budget: Optional[Budget] = None,
                 threads: Optional[int] = None, store=None) -> Optional[GeneratorMatrix]:
    """任意维数下第一个 γ_1 <= gamma_cap 的 Δ-可整除码；预算内找不到返回 None"""
    engine = CensusEngine(budget, threads, store)
    for k in range(1, n + 1):
        record = engine.enumerate(CensusKey(q, delta, n, k, gamma_cap), stop_after=1)
        if record.reps:
            return record.reps[0]
        if record.partial:
            logger.info(f"见证搜索在 k={k} 耗尽预算")
            return None
    return None
