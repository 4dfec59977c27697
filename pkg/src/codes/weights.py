"""
重量分布与可整除性

q^k 在上限内时直接枚举全部码字；否则借助 w(c_H) = n - 𝓜(H) 做超平面扫描。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Set, Tuple

import numpy as np

from gf.field import get_field
from gf import linalg
from codes.matrix import GeneratorMatrix, to_multiset
from pg.geometry import gauss
from pg.multiset import hyperplane_multiplicities

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 2 ** 26
_CHUNK = 1 << 16


class BudgetExceededError(RuntimeError):
    """计算量超出配置的上限"""


@dataclass(frozen=True)
class WeightEnumerator:
    """重量分布 A_w（A_0 = 1）"""
    coeff: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Dict[int, int]) -> "WeightEnumerator":
        return cls(tuple(sorted((int(w), int(c)) for w, c in d.items() if c)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeff)

    def __getitem__(self, w: int) -> int:
        return self.as_dict().get(w, 0)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.coeff)

    @property
    def max_weight(self) -> int:
        return max((w for w, _ in self.coeff), default=0)

    def nonzero_weights(self) -> Tuple[int, ...]:
        return tuple(w for w, c in self.coeff if w and c)

    def __str__(self) -> str:
        return " + ".join(f"{c}x^{w}" if w else str(c) for w, c in self.coeff)


def _by_enumeration(g: GeneratorMatrix) -> Dict[int, int]:
    f = get_field(g.q)
    arr = g.array()
    k = g.k
    total = g.q ** k
    powers = g.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    counts: Dict[int, int] = {}
    for start in range(0, total, _CHUNK):
        ints = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        messages = (ints[:, None] // powers[None, :]) % g.q
        words = linalg.matmul(messages, arr, f)
        values, cnt = np.unique((words != 0).sum(axis=1), return_counts=True)
        for w, c in zip(values, cnt):
            counts[int(w)] = counts.get(int(w), 0) + int(c)
    return counts


def _by_hyperplanes(g: GeneratorMatrix) -> Dict[int, int]:
    m = to_multiset(g)
    weights = m.cardinality - hyperplane_multiplicities(m)
    values, cnt = np.unique(weights, return_counts=True)
    counts = {0: 1}
    for w, c in zip(values, cnt):
        counts[int(w)] = counts.get(int(w), 0) + int(c) * (g.q - 1)
    return counts


def weight_distribution(g: GeneratorMatrix, cap: int = DEFAULT_ENUMERATION_CAP) -> WeightEnumerator:
    """全部 q^k 个码字的精确重量分布"""
    if g.q ** g.k <= cap:
        return WeightEnumerator.from_dict(_by_enumeration(g))
    if gauss(g.k, g.q) <= cap:
        logger.debug(f"q^k={g.q ** g.k} 超出枚举上限, 改用超平面扫描")
        return WeightEnumerator.from_dict(_by_hyperplanes(g))
    raise BudgetExceededError(f"[k]_q={gauss(g.k, g.q)} 超出上限 {cap}")


def is_divisible_code(g: GeneratorMatrix, delta: int, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """所有非零码字重量均为 Δ 的倍数"""
    if delta < 1:
        raise ValueError(f"Δ 必须 >= 1: {delta}")
    return all(w % delta == 0 for w in weight_distribution(g, cap).nonzero_weights())


def we_product(w1: WeightEnumerator, w2: WeightEnumerator) -> WeightEnumerator:
    """直和码的重量分布：多项式乘积"""
    out: Dict[int, int] = {}
    for a, ca in w1.coeff:
        for b, cb in w2.coeff:
            out[a + b] = out.get(a + b, 0) + ca * cb
    return WeightEnumerator.from_dict(out)


# 由重量 8 码字张成的不可分解 8-可整除二元码的全部可能重量分布
INDECOMPOSABLE_A8_BLOCKS: Tuple[WeightEnumerator, ...] = tuple(
    WeightEnumerator.from_dict(d) for d in (
        {0: 1, 8: 1},
        {0: 1, 8: 3},
        {0: 1, 8: 7},
        {0: 1, 8: 15},
        {0: 1, 8: 6, 16: 1},
        {0: 1, 8: 10, 16: 5},
        {0: 1, 8: 14, 16: 1},
        {0: 1, 8: 30, 16: 1},
        {0: 1, 8: 15, 16: 15, 24: 1},
        {0: 1, 8: 21, 16: 35, 24: 7},
    )
)


def a8_reachable_set(max_blocks: int = 2, max_weight: int = 24,
                     blocks: Iterable[WeightEnumerator] = INDECOMPOSABLE_A8_BLOCKS) -> Set[int]:
    """
    至多 max_blocks 个不可分解块之积（最大重量不超过 max_weight）所能取到的 A_8。
    空积给出 A_8 = 0。
    """
    blocks = tuple(blocks)
    one = WeightEnumerator.from_dict({0: 1})
    reachable = {0}
    for size in range(1, max_blocks + 1):
        for combo in itertools.combinations_with_replacement(range(len(blocks)), size):
            w = one
            for i in combo:
                w = we_product(w, blocks[i])
            if w.max_weight <= max_weight:
                reachable.add(w[8])
    logger.debug(f"A_8 可达集合 (max_blocks={max_blocks}): {sorted(reachable)}")
    return reachable
