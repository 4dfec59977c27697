"""
已发表的普查计数与基数 17 的 4-可整除多重集组合数据，作为比对基准。

计数表按 n -> (k=1, k=2, ...) 存放，0 表示不存在。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Suite:
    name: str
    q: int
    delta: int
    rows: Dict[int, Tuple[int, ...]]
    complete: bool = True  # False: 表格本身只是部分结果

    def count(self, n: int, k: int) -> int:
        row = self.rows.get(n, ())
        return row[k - 1] if 1 <= k <= len(row) else 0

    def cells(self) -> List[Tuple[int, int, int]]:
        """全部非零格 (n, k, count)，按 n、k 排序"""
        return [(n, k, c) for n in sorted(self.rows) for k, c in enumerate(self.rows[n], 1) if c]

    @property
    def max_n(self) -> int:
        return max(self.rows)


EVEN = Suite("even", 2, 2, {
    2: (1,),
    3: (0, 1),
    4: (1, 1, 1),
    5: (0, 1, 1, 1),
    6: (1, 2, 3, 2, 1),
    7: (0, 2, 4, 4, 2, 1),
    8: (1, 3, 8, 10, 7, 3, 1),
    9: (0, 3, 9, 18, 16, 9, 3, 1),
    10: (1, 4, 17, 37, 46, 30, 13, 4, 1),
})

DOUBLY_EVEN = Suite("doubly-even", 2, 4, {
    4: (1,),
    6: (0, 1),
    7: (0, 0, 1),
    8: (1, 1, 1, 1),
    10: (0, 1, 1, 1),
    11: (0, 0, 1, 1),
    12: (1, 2, 3, 4, 2),
    13: (0, 0, 1, 1, 2),
    14: (0, 2, 4, 6, 5, 4),
    15: (0, 0, 3, 6, 6, 4, 2),
    16: (1, 3, 8, 18, 21, 15, 7, 2),
    17: (0, 0, 2, 7, 14, 11, 5, 1),
    18: (0, 3, 9, 27, 44, 45, 21, 6),
    19: (0, 0, 6, 22, 52, 62, 40, 10),
    20: (1, 4, 17, 64, 149, 212, 156, 65, 10),
})

TRIPLY_EVEN = Suite("triply-even", 2, 8, {
    8: (1,),
    12: (0, 1),
    14: (0, 0, 1),
    15: (0, 0, 0, 1),
    16: (1, 1, 1, 1, 1),
    20: (0, 1, 1, 1),
    22: (0, 0, 1, 1),
    23: (0, 0, 0, 1, 1),
    24: (1, 2, 3, 4, 4, 1),
    26: (0, 0, 1, 1, 2),
    27: (0, 0, 0, 1, 1, 1),
    28: (0, 2, 4, 6, 7, 6, 1),
    29: (0, 0, 0, 1, 1, 2, 1),
    30: (0, 0, 3, 6, 8, 7, 6, 2),
    31: (0, 0, 0, 4, 8, 8, 6, 4, 1),
    32: (1, 3, 8, 18, 32, 34, 24, 13, 5, 1),
    34: (0, 0, 2, 7, 14, 11, 5, 1),
    35: (0, 0, 0, 3, 7, 7, 3, 1),
    36: (0, 3, 9, 27, 54, 65, 36, 11, 1),
    37: (0, 0, 0, 2, 5, 8, 5, 1),
    38: (0, 0, 6, 22, 57, 79, 61, 21, 2),
    39: (0, 0, 0, 10, 36, 57, 49, 30, 10, 1),
    40: (1, 4, 17, 64, 194, 347, 323, 187, 59, 11, 1),
    41: (0, 0, 0, 2, 12, 29, 26, 12, 3),
})

SIXTEEN = Suite("16-divisible", 2, 16, {
    16: (1,),
    24: (0, 1),
    28: (0, 0, 1),
    30: (0, 0, 0, 1),
    31: (0, 0, 0, 0, 1),
    32: (1, 1, 1, 1, 1, 1),
    40: (0, 1, 1, 1),
    44: (0, 0, 1, 1),
    46: (0, 0, 0, 1, 1),
    47: (0, 0, 0, 0, 1, 1),
    48: (1, 2, 3, 4, 4, 3, 1),
    52: (0, 0, 1, 1, 2),
    54: (0, 0, 0, 1, 1, 1),
    55: (0, 0, 0, 0, 1, 1, 1),
    56: (0, 2, 4, 6, 7, 8, 3, 1),
    58: (0, 0, 0, 1, 1, 2, 1),
    59: (0, 0, 0, 0, 1, 1, 1, 1),
    60: (0, 0, 3, 6, 8, 9, 8, 4, 1),
    61: (0, 0, 0, 0, 1, 1, 2, 1, 1),
    62: (0, 0, 0, 4, 8, 10, 9, 8, 4, 2),
    63: (0, 0, 0, 0, 5, 10, 10, 8, 6, 3, 1),
    64: (1, 3, 8, 18, 32, 48, 48, 35, 21, 11, 4, 1),
    68: (0, 0, 2, 7, 14, 11, 5, 1),
    70: (0, 0, 0, 3, 7, 7, 3, 1),
    71: (0, 0, 0, 0, 3, 7, 7, 3, 1),
    72: (0, 3, 9, 27, 54, 75, 56, 26, 6, 1),
    74: (0, 0, 0, 2, 5, 8, 5, 1),
    75: (0, 0, 0, 0, 2, 5, 5, 4, 1),
    76: (0, 0, 6, 22, 59, 86, 75, 34, 9, 1),
    77: (0, 0, 0, 0, 2, 5, 8, 6, 4, 1),
    78: (0, 0, 0, 10, 36, 64, 66, 52, 28, 11, 2),
    79: (0, 0, 0, 0, 14, 47, 71, 63, 44, 23, 8, 1),
}, complete=False)

TERNARY = Suite("ternary", 3, 3, {
    3: (1,),
    4: (0, 1),
    6: (1, 1),
    7: (0, 1, 1),
})

QUATERNARY = Suite("quaternary", 4, 4, {
    4: (1,),
    5: (0, 1),
    8: (1, 1),
    9: (0, 1, 1),
    10: (0, 1, 1, 1),
    12: (1, 2, 2),
    13: (0, 2, 3, 1),
    14: (0, 1, 5, 3, 1),
    15: (0, 1, 3, 6, 2, 1),
    16: (1, 4, 9, 7, 2),
    17: (0, 3, 12, 9, 2),
    18: (0, 2, 18, 25, 8, 1),
    19: (0, 1, 14, 42, 25, 6, 1),
})

SUITES: Dict[str, Suite] = {s.name: s for s in (EVEN, DOUBLY_EVEN, TRIPLY_EVEN, SIXTEEN, TERNARY, QUATERNARY)}

# Γ_3(3,n) 与 Γ_4(4,n)；列出之外的 n 取值为 1
TERNARY_GAMMA = {1: None, 2: None, 5: None, 3: 3, 6: 3, 7: 3}
QUATERNARY_GAMMA = {
    **{n: None for n in (1, 2, 3, 6, 7, 11)},
    **{n: 2 for n in (12, 14, 18, 19)},
    **{n: 4 for n in (4, 8, 9, 13)},
}


# ----------------------------------------------------------------------
# 基数 17 的 4-可整除多重集：(k, γ_1, λ_1, λ_2, λ_3, (a_5, a_9, a_13))
# ----------------------------------------------------------------------
CARD17_ROWS: Tuple[Tuple[int, int, int, int, int, Tuple[int, int, int]], ...] = (
    (3, 7, 4, 0, 2, (4, 2, 1)),
    (3, 5, 3, 0, 3, (3, 4, 0)),
    (4, 7, 6, 2, 0, (8, 3, 4)),
    (4, 6, 6, 1, 1, (7, 5, 3)),
    (4, 5, 5, 2, 1, (6, 7, 2)),
    (4, 4, 6, 2, 1, (5, 9, 1)),
    (4, 4, 4, 0, 3, (6, 7, 2)),
    (4, 3, 4, 2, 3, (5, 9, 1)),
    (4, 3, 6, 4, 1, (4, 11, 0)),
    (5, 7, 10, 0, 0, (16, 5, 10)),
    (5, 6, 7, 2, 0, (14, 9, 8)),
    (5, 5, 9, 0, 1, (12, 13, 6)),
    (5, 5, 6, 3, 0, (12, 13, 6)),
    (5, 4, 7, 3, 0, (10, 17, 4)),
    (5, 4, 10, 0, 1, (10, 17, 4)),
    (5, 4, 6, 2, 1, (11, 15, 5)),
    (5, 3, 5, 3, 2, (10, 17, 4)),
    (5, 3, 9, 1, 2, (9, 19, 3)),
    (5, 3, 10, 2, 1, (8, 21, 2)),
    (5, 3, 6, 4, 1, (9, 19, 3)),
    (5, 2, 7, 5, 0, (8, 21, 2)),
    (5, 2, 11, 3, 0, (7, 23, 1)),
    (5, 2, 15, 1, 0, (6, 25, 0)),
    (6, 4, 10, 0, 1, (21, 31, 11)),
    (6, 4, 7, 3, 0, (21, 31, 11)),
    (6, 3, 11, 0, 2, (18, 37, 8)),
    (6, 3, 10, 2, 1, (17, 39, 7)),
    (6, 3, 6, 4, 1, (19, 35, 9)),
    (6, 3, 12, 1, 1, (16, 41, 6)),
    (6, 2, 7, 5, 0, (17, 39, 7)),
    (6, 2, 11, 3, 0, (15, 43, 5)),
    (6, 2, 13, 2, 0, (14, 45, 4)),
    (6, 2, 15, 1, 0, (13, 47, 3)),
    (6, 1, 17, 0, 0, (12, 49, 2)),
    (7, 2, 11, 3, 0, (31, 83, 13)),
    (7, 2, 7, 5, 0, (35, 75, 17)),
    (7, 2, 13, 2, 0, (29, 87, 11)),
    (7, 2, 15, 1, 0, (27, 91, 9)),
    (7, 1, 17, 0, 0, (25, 95, 7)),
    (8, 1, 17, 0, 0, (51, 187, 17)),
)


@dataclass(frozen=True)
class Discrepancy:
    suite: str
    n: int
    k: int
    expected: int
    computed: int
    partial: bool

    def describe(self) -> str:
        mark = " (部分结果)" if self.partial else ""
        return f"{self.suite} n={self.n} k={self.k}: 表格 {self.expected}, 计算 {self.computed}{mark}"


def compare_tables(suite: Suite, computed: Dict[Tuple[int, int], Tuple[int, bool]]) -> List[Discrepancy]:
    """
    computed: (n, k) -> (计数, 是否部分结果)。只比较 computed 中出现的格子；
    不一致之处逐条报告，不做取舍。
    """
    out = []
    for (n, k), (count, partial) in sorted(computed.items()):
        expected = suite.count(n, k)
        if count != expected:
            out.append(Discrepancy(suite.name, n, k, expected, count, partial))
    for d in out:
        logger.warning(f"与表格不一致: {d.describe()}")
    return out
