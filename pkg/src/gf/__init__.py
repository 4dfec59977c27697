"""
有限域运算包
"""

from .field import (FieldError, FieldSpec, add, frobenius, get_field, inv, mul, neg,
                    parse_symbol, power, sub, symbol, to_vector)

__all__ = ['FieldError', 'FieldSpec', 'add', 'frobenius', 'get_field', 'inv', 'mul', 'neg',
           'parse_symbol', 'power', 'sub', 'symbol', 'to_vector']
