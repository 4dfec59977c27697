"""
Δ-可整除码的普查、Γ 精确计算与分类命题验证
"""

from .claims import CATALOG, Claim, UnknownClaimError, Verdict, VerdictStatus, get_claim, verify_claim
from .exact import compute_gamma, resolve_gamma
from .reference import SUITES, Suite, compare_tables
from .search import Budget, CensusEngine, CensusKey, CensusRecord, enumerate_codes, find_witness
from .stats import StatsRow, counts_csv, stats_csv, stats_table
from .store import CacheCorruptError, CensusStore

__all__ = [
    'Budget', 'CATALOG', 'CacheCorruptError', 'CensusEngine', 'CensusKey', 'CensusRecord', 'CensusStore',
    'Claim', 'SUITES', 'StatsRow', 'Suite', 'UnknownClaimError', 'Verdict', 'VerdictStatus',
    'compare_tables', 'compute_gamma', 'counts_csv', 'enumerate_codes', 'find_witness', 'get_claim',
    'resolve_gamma', 'stats_csv', 'stats_table', 'verify_claim',
]
