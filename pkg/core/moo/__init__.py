"""
MOO package: модифицированный NSGA-II
"""

from .operators import mutation_delta, polynomial_mutation, sbx_beta, sbx_crossover
from .sorting import (
    crowding_distance, dcd_trim, dcd_value, dominates, dynamic_crowding_distance, fast_non_dominated_sort,
    gap_variance,
)
from .engine import (
    EvolutionResult, GAParams, GenerationStats, Individual, ParetoArchive, Problem, evolve, hypervolume,
)

__all__ = [
    'mutation_delta', 'polynomial_mutation', 'sbx_beta', 'sbx_crossover',
    'crowding_distance', 'dcd_trim', 'dcd_value', 'dominates', 'dynamic_crowding_distance',
    'fast_non_dominated_sort', 'gap_variance',
    'EvolutionResult', 'GAParams', 'GenerationStats', 'Individual', 'ParetoArchive', 'Problem', 'evolve',
    'hypervolume',
]
