"""
Placement package: кодирование планов, оценка, перебор, компромисс
"""

from .plan import DECODE_THRESHOLD, SwitchPlan, decode
from .evaluation import (
    PENALTY, EvaluatedPlan, PlacementOptions, PlacementProblem, evaluate, normal_state_network, worker_pool,
)
from .oracle import (
    MAX_ORACLE_BITS, enumerate_plans, exhaustive_pareto, objective_vectors, pareto_subset, recovered_fraction,
)
from .compromise import memberships, select_compromise
from .search import PlacementResult, optimize_placement

__all__ = [
    'DECODE_THRESHOLD', 'SwitchPlan', 'decode',
    'PENALTY', 'EvaluatedPlan', 'PlacementOptions', 'PlacementProblem', 'evaluate', 'normal_state_network',
    'worker_pool',
    'MAX_ORACLE_BITS', 'enumerate_plans', 'exhaustive_pareto', 'objective_vectors', 'pareto_subset',
    'recovered_fraction',
    'memberships', 'select_compromise',
    'PlacementResult', 'optimize_placement',
]
