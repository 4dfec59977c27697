"""
Γ_q(Δ,n)：基数为 n 的 Δ-可整除多重集所能达到的最小 γ_1

q = 2、Δ ∈ {1,2,4,8} 时直接查表（附带显式构造的见证码）；
Δ 含与特征互素的因子时按 Ward 约化；其余情形交由 census 搜索。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Union

from codes.matrix import GeneratorMatrix, from_multiset, repeat
from lengths.constructions import atom, decompose, distinct_points
from lengths.expansion import Expansion, power_exponent, sqr_adic_expansion, ward_reduce
from pg.multiset import PointMultiset, direct_sum, gamma1, is_divisible, scale, to_span

logger = logging.getLogger(__name__)

INFINITY = math.inf

GammaValue = Union[int, float, None]

# witness_status 取值
WITNESS_OK = "ok"
WITNESS_EMPTY = "empty"
WITNESS_NONE = "none"                    # ∞ 没有见证
WITNESS_BUDGET = "budget"                # 回退搜索耗尽预算
WITNESS_UNCONSTRUCTED = "unconstructed"  # 没有构造且未启用回退搜索


class RequiresCensusError(LookupError):
    """查表无法回答，需要 census 搜索"""


@dataclass(frozen=True)
class GammaResult:
    q: int
    delta: int
    n: int
    value: GammaValue
    witness: Optional[GeneratorMatrix] = None
    certificate: Optional[Expansion] = None
    source: str = "table"
    witness_status: str = WITNESS_OK
    partial: bool = False
    verified: Dict[str, int] = field(default_factory=dict)

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY

    def value_text(self) -> str:
        if self.value is None:
            return "unknown"
        return "inf" if self.is_infinite else str(int(self.value))

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "delta": self.delta,
            "n": self.n,
            "value": self.value_text(),
            "source": self.source,
            "witness_status": self.witness_status,
            "partial": self.partial,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.verified:
            out["verified"] = dict(self.verified)
        if self.witness is not None:
            out["witness_k"] = self.witness.k
        return out


# ----------------------------------------------------------------------
# 二元情形的 Γ 表
# ----------------------------------------------------------------------
_INF_2 = {1}
_INF_4 = {1, 2, 3, 5, 9}
_INF_8 = {1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33}

_TABLE_4 = {4: 4, 11: 4, 6: 2, 10: 2, 12: 2, 13: 2, 7: 1, 8: 1}
_TABLE_8 = {
    **{n: 8 for n in (8, 22, 23, 37)},
    **{n: 4 for n in (12, 20, 24, 26, 27, 35, 39, 41)},
    **{n: 2 for n in (14, 28, 29, 34, 36, 38, 40, 42, 43, 44, *range(52, 60))},
    **{n: 1 for n in (15, 16, 30, 31, 32, *range(45, 52))},
}


def binary_gamma(delta: int, n: int) -> GammaValue:
    """Γ_2(Δ,n)，Δ ∈ {1,2,4,8}，n >= 1"""
    if n < 1:
        raise ValueError(f"n 必须 >= 1: {n}")
    if delta == 1:
        return 1
    if delta == 2:
        if n in _INF_2:
            return INFINITY
        return 2 if n == 2 else 1
    if delta == 4:
        if n in _INF_4:
            return INFINITY
        return _TABLE_4.get(n, 1)
    if delta == 8:
        if n in _INF_8:
            return INFINITY
        return _TABLE_8.get(n, 1)
    raise RequiresCensusError(f"Γ_2({delta},{n}) 不在表内")


def gamma_table(delta: int, upto: int) -> Dict[int, GammaValue]:
    """n = 1..upto 的 Γ_2(Δ,n)"""
    return {n: binary_gamma(delta, n) for n in range(1, upto + 1)}


# ----------------------------------------------------------------------
# 见证构造
# ----------------------------------------------------------------------
def construct_witness(delta: int, n: int, value: int) -> Optional[PointMultiset]:
    """由原子（可缩放）直和拼出的 Δ-可整除多重集，γ_1 = value；拼不出返回 None"""
    parts = decompose(delta, n, value)
    if not parts:
        return None
    m: Optional[PointMultiset] = None
    for mult, atom_delta, size in parts:
        piece = scale(atom(atom_delta, size), mult)
        m = piece if m is None else direct_sum(m, piece)
    m = to_span(m)
    if m.cardinality != n or gamma1(m) != value or not is_divisible(m, delta):
        raise AssertionError(f"构造的见证不满足要求: Δ={delta}, n={n}, γ={value}, parts={parts}")
    logger.debug(f"Γ_2({delta},{n})={value} 的见证: {parts}")
    return m


WitnessSearch = Callable[[int, int, int, int], Optional[GeneratorMatrix]]


def gamma_lookup(q: int, delta: int, n: int, search: Optional[WitnessSearch] = None) -> GammaResult:
    """
    查表求 Γ_q(Δ,n)。search(q, Δ, n, γ) 为可选的见证回退搜索，
    返回 None 表示预算内未找到。
    """
    if delta < 1:
        raise ValueError(f"Δ 必须 >= 1: {delta}")
    p_power, d = ward_reduce(q, delta)
    r, rest = power_exponent(q, p_power)

    if n == 0:
        return GammaResult(q, delta, n, 0, source="trivial", witness_status=WITNESS_EMPTY)
    if n < 0:
        cert = sqr_adic_expansion(n, q, r) if r else None
        return GammaResult(q, delta, n, INFINITY, certificate=cert, source="trivial",
                           witness_status=WITNESS_NONE)
    if n % d:
        logger.debug(f"Ward 约化: {d} 不整除 n={n}")
        return GammaResult(q, delta, n, INFINITY, source="ward", witness_status=WITNESS_NONE)

    reduced = n // d
    if r:
        cert = sqr_adic_expansion(reduced, q, r)
        if not cert.feasible:
            return GammaResult(q, delta, n, INFINITY, certificate=cert,
                               source="expansion" if d == 1 else "ward", witness_status=WITNESS_NONE)

    if p_power == 1:
        witness = from_multiset(distinct_points(reduced, q))
        return GammaResult(q, delta, n, d, witness=repeat(witness, d) if d > 1 else witness,
                           source="ward" if d > 1 else "table")

    if q != 2 or p_power not in (2, 4, 8):
        raise RequiresCensusError(f"Γ_{q}({delta},{n}) 需要 census 搜索")

    value = binary_gamma(p_power, reduced)
    source = "ward" if d > 1 else "table"
    m = construct_witness(p_power, reduced, value)
    if m is not None:
        witness = from_multiset(m)
        return GammaResult(q, delta, n, d * value, witness=repeat(witness, d) if d > 1 else witness,
                           source=source)

    if search is None:
        logger.info(f"Γ_2({p_power},{reduced})={value} 没有显式构造, 未启用回退搜索")
        return GammaResult(q, delta, n, d * value, source=source, witness_status=WITNESS_UNCONSTRUCTED)
    logger.info(f"Γ_2({p_power},{reduced})={value} 没有显式构造, 回退到 census 搜索见证")
    found = search(q, p_power, reduced, value)
    if found is None:
        logger.warning(f"Γ_2({p_power},{reduced}) 的见证搜索耗尽预算")
        return GammaResult(q, delta, n, d * value, source=source, witness_status=WITNESS_BUDGET)
    return GammaResult(q, delta, n, d * value, witness=repeat(found, d) if d > 1 else found, source=source)
