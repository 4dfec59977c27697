"""
射影几何 PG(k-1, q) 与点多重集演算
"""

from .geometry import (AmbientMismatchError, GeometryError, Subspace, gauss, hyperplanes,
                       point_index, projective_points)
from .multiset import (NegativeMultiplicityError, PointDistribution, PointMultiset, Spectrum,
                       add, direct_sum, gamma, gamma1, is_divisible, multiplicity, point_distribution,
                       project, restrict, scale, spectrum, standard_equations_check, sub_checked)
from .structure import (StructureKind, StructureTag, classify_structure, lower_bound_space_mult,
                        projective_base, special_point_mult)

__all__ = [
    'AmbientMismatchError', 'GeometryError', 'NegativeMultiplicityError', 'PointDistribution',
    'PointMultiset', 'Spectrum', 'StructureKind', 'StructureTag', 'Subspace', 'add',
    'classify_structure', 'direct_sum', 'gamma', 'gamma1', 'gauss', 'hyperplanes', 'is_divisible',
    'lower_bound_space_mult', 'multiplicity', 'point_distribution', 'point_index', 'project',
    'projective_base', 'projective_points', 'restrict', 'scale', 'special_point_mult', 'spectrum',
    'standard_equations_check', 'sub_checked',
]
