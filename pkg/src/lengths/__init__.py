"""
长度可行性与 Γ_q(Δ,n)
"""

from pg.geometry import gauss

from .expansion import (BaseSequence, Expansion, base_sequence, infeasible_lengths, is_length_feasible,
                        sqr_adic_expansion, ward_reduce)
from .gamma import INFINITY, GammaResult, RequiresCensusError, binary_gamma, gamma_lookup, gamma_table

__all__ = [
    'BaseSequence', 'Expansion', 'GammaResult', 'INFINITY', 'RequiresCensusError', 'base_sequence',
    'binary_gamma', 'gamma_lookup', 'gamma_table', 'gauss', 'infeasible_lengths', 'is_length_feasible',
    'sqr_adic_expansion', 'ward_reduce',
]
