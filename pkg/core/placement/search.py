"""
Поиск фронта Парето размещения эволюционным алгоритмом
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from ..moo import EvolutionResult, GAParams, evolve
from ..network import Network
from ..solvers import CostParams, PowerFlowSettings, ReliabilityParams
from .evaluation import EvaluatedPlan, PlacementOptions, PlacementProblem, genotype_map, worker_pool
from .plan import decode

logger = logging.getLogger(__name__)


@dataclass
class PlacementResult:
    front: List[EvaluatedPlan]  # по возрастанию F1
    evolution: EvolutionResult


def optimize_placement(
    net: Network,
    cost: CostParams,
    rel: ReliabilityParams,
    pf: PowerFlowSettings,
    ga: GAParams,
    options: Optional[PlacementOptions] = None,
    workers: int = 1,
) -> PlacementResult:
    """Фронт Парето размещения; результат не зависит от числа процессов"""
    problem = PlacementProblem(net, cost, rel, pf, options)
    with worker_pool(problem, workers) as pool:
        evolution = evolve(problem, ga, genotype_map(problem, pool))
    front = [problem.evaluate_plan(decode(ind.genotype, net)) for ind in evolution.archive]
    front.sort(key=lambda e: e.objectives)
    penalized = sum(1 for e in front if e.penalized)
    if penalized:
        logger.warning(f"⚠️ Во фронте {penalized} оштрафованных планов")
    logger.info(f"📈 Фронт Парето: {len(front)} планов")
    return PlacementResult(front=front, evolution=evolution)
