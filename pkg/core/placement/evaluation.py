"""
Оценка плана размещения: потокораспределение -> потери -> F1; FMEA -> F2

План, для которого потокораспределение не сошлось (или реконфигурация
через пункты маневра нарушает радиальность), получает штрафные значения
PENALTY по обеим целям и остается в популяции.
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import PowerFlowError
from ..network import Branch, Network, orient_branches
from ..network.topology import validate_topology
from ..solvers import (
    CostBreakdown, CostParams, EnsObjective, PowerFlowSettings, ReliabilityParams, branch_losses, ens_objective,
    placement_cost, solve_power_flow,
)
from .plan import SwitchPlan, decode

logger = logging.getLogger(__name__)

PENALTY = 1e15


class PlacementOptions(BaseModel):
    """Режим нормальной схемы при оценке потерь"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # Построенные пункты маневра замыкаются, их transfer_branch размыкается
    reconfigure_ties: bool = False


@dataclass(frozen=True)
class EvaluatedPlan:
    plan: SwitchPlan
    f1: float
    f2: float
    cost: Optional[CostBreakdown]
    reliability: Optional[EnsObjective]
    loss_kw: float = 0.0
    voltage_violations: int = 0
    penalized: bool = False

    @property
    def objectives(self) -> Tuple[float, float]:
        return self.f1, self.f2

    @property
    def total_ens_kwh(self) -> float:
        return self.reliability.total_ens_kwh if self.reliability else PENALTY


# ==================== НОРМАЛЬНАЯ СХЕМА ====================

def normal_state_network(net: Network, plan: SwitchPlan, options: PlacementOptions) -> Optional[Network]:
    """
    Сеть для расчета потерь. Без реконфигурации - исходная сеть.
    С реконфигурацией - с замкнутыми пунктами маневра; None, если схема не радиальна.
    """
    ties = plan.built_maneuver_sites
    if not options.reconfigure_ties or not ties:
        return net
    opened = {site.transfer_branch for site in ties if site.transfer_branch}
    branches: List[Branch] = [b for b in net.branch_list if b.id not in opened]
    for site in ties:
        a, b = site.between
        branches.append(Branch(
            id=site.id, from_node=a, to_node=b,
            resistance=site.resistance, reactance=site.reactance, length=site.length,
        ))
    branches = orient_branches(net.node_list, branches)
    reconfigured = Network(
        net.node_list, branches, net.transformer_list, net.load_point_list,
        name=f"{net.name}[{plan.maneuver_bits}]", base_kva=net.base_kva, base_kv=net.base_kv,
    )
    report = validate_topology(reconfigured)
    if not report.is_valid:
        logger.debug(f"Реконфигурация {plan} не радиальна: {', '.join(report.codes())}")
        return None
    return reconfigured


def _penalized(plan: SwitchPlan, reason: str) -> EvaluatedPlan:
    logger.warning(f"⚠️ План {plan} оштрафован: {reason}")
    return EvaluatedPlan(plan=plan, f1=PENALTY, f2=PENALTY, cost=None, reliability=None, penalized=True)


# ==================== ОЦЕНКА ====================

def evaluate(
    net: Network,
    plan: SwitchPlan,
    cost: CostParams,
    rel: ReliabilityParams,
    pf: PowerFlowSettings,
    options: Optional[PlacementOptions] = None,
) -> EvaluatedPlan:
    """F1 и F2 плана (детерминированно)"""
    options = options or PlacementOptions()
    state_net = normal_state_network(net, plan, options)
    if state_net is None:
        return _penalized(plan, "замыкание пунктов маневра нарушает радиальность")
    try:
        state = solve_power_flow(state_net, settings=pf)
    except PowerFlowError as e:
        return _penalized(plan, str(e))
    if not state.converged:
        return _penalized(plan, f"потокораспределение не сошлось за {pf.max_iterations} итераций")

    losses = branch_losses(state, state_net)
    breakdown = placement_cost(plan, cost, losses)
    reliability = ens_objective(net, plan, rel)
    return EvaluatedPlan(
        plan=plan,
        f1=breakdown.total,
        f2=reliability.f2,
        cost=breakdown,
        reliability=reliability,
        loss_kw=sum(losses.values()),
        voltage_violations=len(state.voltage_violations(pf)),
    )


class PlacementProblem:
    """Задача размещения для эволюционного поиска: гены [0, 1]^(n+m), цели (F1, F2)"""

    n_obj = 2

    def __init__(
        self,
        net: Network,
        cost: CostParams,
        rel: ReliabilityParams,
        pf: PowerFlowSettings,
        options: Optional[PlacementOptions] = None,
    ):
        self.net = net
        self.cost = cost
        self.rel = rel
        self.pf = pf
        self.options = options or PlacementOptions()
        self.n_var = len(net.switch_sites) + len(net.maneuver_sites)
        self.lower = np.zeros(self.n_var)
        self.upper = np.ones(self.n_var)
        self._cache: Dict[str, EvaluatedPlan] = {}

    def evaluate_plan(self, plan: SwitchPlan) -> EvaluatedPlan:
        cached = self._cache.get(plan.key)
        if cached is None:
            cached = evaluate(self.net, plan, self.cost, self.rel, self.pf, self.options)
            self._cache[plan.key] = cached
        return cached

    def evaluate(self, genotype: np.ndarray) -> Tuple[float, float]:
        return self.evaluate_plan(decode(genotype, self.net)).objectives

    @property
    def cache_size(self) -> int:
        return len(self._cache)


# ==================== ПАРАЛЛЕЛЬНАЯ ОЦЕНКА ====================

_worker_problem: Optional[PlacementProblem] = None


def _init_worker(problem: PlacementProblem):
    global _worker_problem
    _worker_problem = problem


def _worker_evaluate(genotype: np.ndarray) -> Tuple[float, float]:
    return _worker_problem.evaluate(genotype)


def _worker_evaluate_index(index: int) -> EvaluatedPlan:
    return _worker_problem.evaluate_plan(SwitchPlan.from_index(_worker_problem.net, index))


@contextmanager
def worker_pool(problem: PlacementProblem, workers: int) -> Iterator[Optional[Pool]]:
    """Пул процессов с задачей в каждом процессе; при workers <= 1 - None"""
    if workers <= 1:
        yield None
        return
    with Pool(workers, initializer=_init_worker, initargs=(problem,)) as pool:
        logger.info(f"⚙️ Параллельная оценка: {workers} процессов")
        yield pool


def genotype_map(problem: PlacementProblem, pool: Optional[Pool]):
    """Упорядоченный map генотипов -> (F1, F2) для evolve"""
    if pool is None:
        return None

    def _map(_fn, genotypes: Sequence[np.ndarray]):
        return pool.map(_worker_evaluate, list(genotypes))

    return _map
