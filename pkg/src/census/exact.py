"""
用普查精确计算 Γ_q(Δ,n)：查表无法回答时（q > 2 或 Δ 超出表格）逐个 γ 搜索见证
"""

import logging
from typing import Optional

from codes.matrix import repeat
from lengths.expansion import power_exponent, sqr_adic_expansion, ward_reduce
from lengths.gamma import (INFINITY, WITNESS_BUDGET, WITNESS_NONE, GammaResult, RequiresCensusError,
                           gamma_lookup)

from census.search import Budget, CensusEngine, CensusKey, find_witness

logger = logging.getLogger(__name__)


def compute_gamma(q: int, delta: int, n: int, budget: Optional[Budget] = None, threads: Optional[int] = None,
                  store=None, max_gamma: Optional[int] = None) -> GammaResult:
    """
    γ = 1, 2, ... 依次对全部维数搜索 γ_1 <= γ 的 Δ-可整除多重集，第一个成功的 γ 即为 Γ。
    预算耗尽时返回 partial 结果，value 为 None，verified 记录已排除的 γ。
    """
    p_power, d = ward_reduce(q, delta)
    if n <= 0 or n % d:
        return gamma_lookup(q, delta, n)
    reduced = n // d
    r, _ = power_exponent(q, p_power)
    if r:
        cert = sqr_adic_expansion(reduced, q, r)
        if not cert.feasible:
            return GammaResult(q, delta, n, INFINITY, certificate=cert,
                               source="expansion" if d == 1 else "ward", witness_status=WITNESS_NONE)

    engine = CensusEngine(budget, threads, store)
    limit = min(reduced, max_gamma) if max_gamma is not None else reduced
    for g in range(1, limit + 1):
        for k in range(1, reduced + 1):
            record = engine.enumerate(CensusKey(q, p_power, reduced, k, g), stop_after=1)
            if record.reps:
                witness = record.reps[0]
                logger.info(f"Γ_{q}({p_power},{reduced}) = {g}, 见证维数 k={k}")
                return GammaResult(q, delta, n, d * g, witness=repeat(witness, d) if d > 1 else witness,
                                   source="census", verified={"k": k, "gamma": g})
            if record.partial:
                logger.warning(f"Γ_{q}({p_power},{reduced}): 在 γ={g}, k={k} 处预算耗尽")
                return GammaResult(q, delta, n, None, source="census", witness_status=WITNESS_BUDGET,
                                   partial=True, verified={"gamma_excluded": g - 1, "k_searched": k - 1})
    if limit < reduced:
        return GammaResult(q, delta, n, None, source="census", witness_status=WITNESS_NONE,
                           partial=True, verified={"gamma_excluded": limit})
    return GammaResult(q, delta, n, INFINITY, source="census", witness_status=WITNESS_NONE,
                       verified={"gamma_excluded": limit})


def resolve_gamma(q: int, delta: int, n: int, budget: Optional[Budget] = None,
                  witness_budget: Optional[Budget] = None, threads: Optional[int] = None, store=None,
                  witness_search: bool = True) -> GammaResult:
    """先查表；表格无法回答时精确普查。没有显式构造的见证按需用有限预算搜索"""
    def search(q_, delta_, n_, g):
        return find_witness(q_, delta_, n_, g, witness_budget, threads, store)

    try:
        return gamma_lookup(q, delta, n, search if witness_search else None)
    except RequiresCensusError:
        logger.info(f"Γ_{q}({delta},{n}) 不在表内, 转入普查")
        return compute_gamma(q, delta, n, budget, threads, store)
