"""
普查结果的组合数据表与 CSV 导出
"""

import csv
import io
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from census.search import CensusRecord
from pg.multiset import PointMultiset, gamma1, point_distribution, spectrum, standard_equations_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StatsRow:
    n: int
    k: int
    delta: int
    gamma_1: int
    lam: Tuple[int, ...]                  # (λ_1, ..., λ_γ1)
    spectrum: Tuple[Tuple[int, int], ...]  # ((i, a_i), ...)，只含 a_i > 0

    def lam_upto(self, size: int) -> Tuple[int, ...]:
        return (self.lam + (0,) * size)[:size]

    def spectrum_at(self, indices: Sequence[int]) -> Tuple[int, ...]:
        a = dict(self.spectrum)
        return tuple(a.get(i, 0) for i in indices)

    def sort_key(self):
        return (self.n, self.k, self.delta, -self.gamma_1, self.lam, self.spectrum)


def stats_row(m: PointMultiset, delta: int) -> StatsRow:
    g = gamma1(m)
    if not standard_equations_check(m):
        raise AssertionError(f"标准方程不成立: {m}")
    return StatsRow(
        n=m.cardinality,
        k=m.k,
        delta=delta,
        gamma_1=g,
        lam=point_distribution(m).vector(g),
        spectrum=tuple((i, a) for i, a in spectrum(m).a if a),
    )


def stats_table(records: Iterable[CensusRecord]) -> List[StatsRow]:
    """每个等价类一行，按 (n, k, Δ, -γ_1, λ, 谱) 排序"""
    rows = []
    for record in records:
        if record.partial:
            logger.warning(f"{record.key.describe()} 是部分结果, 统计表可能不完整")
        rows.extend(stats_row(m, record.key.delta) for m in record.multisets())
    return sorted(rows, key=StatsRow.sort_key)


def row_signature(row: StatsRow, lam_size: int, spectrum_indices: Sequence[int]) -> Tuple:
    """(k, γ_1, λ_1..λ_lam_size, 谱分量) 用于与已发表的数据逐行比对"""
    return (row.k, row.gamma_1) + row.lam_upto(lam_size) + (row.spectrum_at(spectrum_indices),)


def signature_counter(rows: Iterable[StatsRow], lam_size: int, spectrum_indices: Sequence[int]) -> Counter:
    return Counter(row_signature(r, lam_size, spectrum_indices) for r in rows)


# ----------------------------------------------------------------------
# CSV
# ----------------------------------------------------------------------
def counts_csv(cells: Iterable[Tuple[int, int, int]]) -> str:
    """列顺序固定为 n,k,count"""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "count"])
    for n, k, count in sorted(cells):
        writer.writerow([n, k, count])
    return buf.getvalue()


def stats_csv(rows: Sequence[StatsRow]) -> str:
    """列顺序：n,k,delta,gamma1,lambda_1..,a_i..（λ 与谱的列取全部行的并集）"""
    lam_size = max((len(r.lam) for r in rows), default=0)
    indices = sorted({i for r in rows for i, _ in r.spectrum})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "delta", "gamma1"]
                    + [f"lambda_{i}" for i in range(1, lam_size + 1)]
                    + [f"a_{i}" for i in indices])
    for r in rows:
        writer.writerow([r.n, r.k, r.delta, r.gamma_1, *r.lam_upto(lam_size), *r.spectrum_at(indices)])
    return buf.getvalue()
