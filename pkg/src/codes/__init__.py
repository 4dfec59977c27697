"""
线性码：生成矩阵、重量分布与半线性等价规范形
"""

from .matrix import (GeneratorMatrix, MatrixError, NonSpanningError, format_matrix, from_multiset,
                     parse_matrix, repeat, to_multiset)
from .weights import (BudgetExceededError, WeightEnumerator, a8_reachable_set, is_divisible_code,
                      we_product, weight_distribution)
from .canonical import CanonicalForm, canonical_form

__all__ = [
    'BudgetExceededError', 'CanonicalForm', 'GeneratorMatrix', 'MatrixError', 'NonSpanningError',
    'WeightEnumerator', 'a8_reachable_set', 'canonical_form', 'format_matrix', 'from_multiset',
    'is_divisible_code', 'parse_matrix', 'repeat', 'to_multiset', 'we_product', 'weight_distribution',
]
