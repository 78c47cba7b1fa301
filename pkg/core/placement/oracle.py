"""
Точный фронт Парето полным перебором всех 2^(n+m) планов (для небольших сетей)
"""

import logging
from typing import List, Optional

import numpy as np

from ..errors import ConfigError
from ..moo import fast_non_dominated_sort
from ..network import Network
from ..solvers import CostParams, PowerFlowSettings, ReliabilityParams
from .evaluation import EvaluatedPlan, PlacementOptions, PlacementProblem, _worker_evaluate_index, worker_pool
from .plan import SwitchPlan

logger = logging.getLogger(__name__)

MAX_ORACLE_BITS = 16


def enumerate_plans(
    problem: PlacementProblem, max_bits: int = MAX_ORACLE_BITS, workers: int = 1,
) -> List[EvaluatedPlan]:
    """Оценки всех планов в порядке номера (младшие биты - выключатели)"""
    bits = problem.n_var
    if bits > max_bits:
        raise ConfigError(f"перебор невозможен: {bits} кандидатов при ограничении {max_bits}")
    total = 1 << bits
    logger.info(f"🔍 Полный перебор: {total} планов")
    with worker_pool(problem, workers) as pool:
        if pool is None:
            return [problem.evaluate_plan(SwitchPlan.from_index(problem.net, i)) for i in range(total)]
        return pool.map(_worker_evaluate_index, range(total), chunksize=max(1, total // (8 * workers)))


def pareto_subset(evaluated: List[EvaluatedPlan]) -> List[EvaluatedPlan]:
    """Недоминируемые планы, отсортированные по (F1, F2) со стабильным порядком"""
    if not evaluated:
        return []
    objs = np.array([e.objectives for e in evaluated])
    front = fast_non_dominated_sort(objs)[0]
    return sorted((evaluated[i] for i in front), key=lambda e: e.objectives)


def exhaustive_pareto(
    net: Network,
    cost: CostParams,
    rel: ReliabilityParams,
    pf: PowerFlowSettings,
    max_bits: int = MAX_ORACLE_BITS,
    options: Optional[PlacementOptions] = None,
    workers: int = 1,
) -> List[EvaluatedPlan]:
    """Точный фронт Парето; все планы с недоминируемым вектором целей"""
    problem = PlacementProblem(net, cost, rel, pf, options)
    front = pareto_subset(enumerate_plans(problem, max_bits, workers))
    logger.info(f"✅ Точный фронт: {len(front)} планов")
    return front


def objective_vectors(plans: List[EvaluatedPlan]) -> List[tuple]:
    """Уникальные векторы целей в порядке первого появления"""
    seen = []
    for e in plans:
        if e.objectives not in seen:
            seen.append(e.objectives)
    return seen


def recovered_fraction(found: List[EvaluatedPlan], true_front: List[EvaluatedPlan], rel_tol: float = 1e-9) -> float:
    """Доля векторов точного фронта, найденных поиском"""
    truth = objective_vectors(true_front)
    if not truth:
        return 1.0
    hits = 0
    for t in truth:
        if any(np.allclose(t, f.objectives, rtol=rel_tol, atol=0.0) for f in found):
            hits += 1
    return hits / len(truth)
