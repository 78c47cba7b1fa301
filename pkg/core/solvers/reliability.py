"""
Аналитическая оценка надежности методом анализа видов отказов (FMEA)

Для каждой точки нагрузки перебираются все отказы (ветви и трансформаторы).
Отказ ветви отключает ее зону изоляции - связный набор ветвей, ограниченный
установленными выключателями (телеуправляемыми или ручными) и выключателем фидера.
    λ_s = Σ λ_i,  U_s = Σ λ_i * d_i,  r_s = U_s / λ_s,  ENS = P * U_s
где d_i - длительность перерыва по классу воздействия.
Вторая целевая функция F2 = Σ IC_i * ENS_i * K_i.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import UnknownElementError
from ..network import LoadPoint, Network

if TYPE_CHECKING:
    from ..placement.plan import SwitchPlan

logger = logging.getLogger(__name__)


class ReliabilityParams(BaseModel):
    """Времена переключений и режим резервирования через пункты маневра"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    remote_switch_time: float = Field(default=0.05, gt=0.0)  # ч
    manual_section_time: float = Field(default=1.0, gt=0.0)  # ч
    include_maneuver_backfeed: bool = True
    backfeed_capacity_kw: Optional[float] = Field(default=None, gt=0.0)  # None - без ограничения

    @model_validator(mode="after")
    def _times(self) -> "ReliabilityParams":
        if self.remote_switch_time > self.manual_section_time:
            raise ValueError("remote_switch_time не может превышать manual_section_time")
        return self


class ImpactClass(str, Enum):
    IN_ZONE_REPAIR = "in_zone_repair"
    UPSTREAM_SWITCHED = "upstream_switched"
    BACKFED_SWITCHED = "backfed_switched"
    UNAFFECTED = "unaffected"


@dataclass(frozen=True)
class LoadPointReliability:
    """Показатели надежности точки нагрузки"""
    lambda_s: float  # отказ/год
    u_s: float  # ч/год
    r_s: float  # ч/отказ
    ens: float  # кВт*ч/год


@dataclass(frozen=True)
class LoadPointBreakdown:
    """Строка отчета ENS по точке нагрузки"""
    load_point_id: str
    lambda_s: float
    u_s: float
    r_s: float
    ens: float
    ic: float
    k: float
    cost_contribution: float


@dataclass(frozen=True)
class EnsObjective:
    """F2 и разбивка по точкам нагрузки"""
    f2: float  # $/год
    total_ens_kwh: float
    breakdown: Dict[str, LoadPointBreakdown]


@dataclass(frozen=True)
class FailureMode:
    """Отказ одного элемента: ветвь или трансформатор"""
    component_id: str
    failure_rate: float
    repair_time: float
    is_transformer: bool


def failure_modes(net: Network) -> List[FailureMode]:
    """Все виды отказов сети: ветви в порядке обхода, затем трансформаторы"""
    modes = [
        FailureMode(b_id, net.branches[b_id].failure_rate, net.branches[b_id].repair_time, False)
        for b_id in net.branch_order
    ]
    modes += [FailureMode(t.id, t.failure_rate, t.repair_time, True) for t in net.transformer_list]
    return modes


# ==================== ЗОНЫ ИЗОЛЯЦИИ ====================

class ZoneMap:
    """
    Разбиение ветвей на зоны изоляции для конкретного плана.
    Выключатель на ветви стоит со стороны источника: ветвь с выключателем открывает новую зону.
    Корневая зона фидера (за выключателем фидера) обозначается ("feeder", id источника).
    """

    def __init__(self, net: Network, plan: "SwitchPlan"):
        self.net = net
        self.remote = plan.installed_branches
        self.manual = frozenset(b.id for b in net.branch_list if b.manual_switch)
        self.ties = plan.built_maneuver_sites
        zone: Dict[str, Union[str, Tuple[str, str]]] = {}
        for b_id in net.branch_order:
            branch = net.branches[b_id]
            if b_id in self.remote or b_id in self.manual:
                zone[b_id] = b_id
            else:
                parent = net.parent_branch(branch.from_node)
                zone[b_id] = zone[parent] if parent is not None else ("feeder", branch.from_node)
        self.zone = zone

    def is_remote(self, head: str) -> bool:
        return head in self.remote

    def switching_time(self, head: str, params: ReliabilityParams) -> float:
        """Время переключения на границе зоны с головой head"""
        return params.remote_switch_time if self.is_remote(head) else params.manual_section_time

    @cached_property
    def _island_load(self) -> Dict[str, float]:
        loads: Dict[str, float] = {}
        for b_id in self.net.branch_order:
            if self.zone[b_id] == b_id:
                nodes = self.net.subtree_nodes(b_id)
                loads[b_id] = sum(
                    max(self.net.load_points[lp_id].mean_active, 0.0)
                    for node_id in sorted(nodes) for lp_id in self.net.load_points_by_node.get(node_id, ())
                )
        return loads

    def can_backfeed(self, island_head: str, params: ReliabilityParams) -> bool:
        """Есть ли построенный пункт маневра от острова ниже island_head к другому фидеру"""
        if not params.include_maneuver_backfeed or not self.ties:
            return False
        if params.backfeed_capacity_kw is not None and self._island_load[island_head] > params.backfeed_capacity_kw:
            return False
        island = self.net.subtree_nodes(island_head)
        feeder = self.net.feeder_of(self.net.branches[island_head].from_node)
        for tie in self.ties:
            a, b = tie.between
            if a in island and self.net.feeder_of(b) != feeder:
                return True
            if b in island and self.net.feeder_of(a) != feeder:
                return True
        return False


def classify_impact(
    net: Network,
    plan: "SwitchPlan",
    failed: str,
    lp: str,
    params: ReliabilityParams,
    zones: Optional[ZoneMap] = None,
) -> Tuple[ImpactClass, float]:
    """
    Класс воздействия отказа failed на точку нагрузки lp и длительность перерыва, ч.
    Длительность переключений не превышает времени ремонта отказавшего элемента.
    """
    load_point = net.load_point(lp)
    if failed in net.transformers:
        unit = net.transformers[failed]
        # Трансформатор питает только нагрузки своего узла
        if unit.at_node == load_point.at_node:
            return ImpactClass.IN_ZONE_REPAIR, unit.repair_time
        return ImpactClass.UNAFFECTED, 0.0
    if failed not in net.branches:
        raise UnknownElementError(f"неизвестный элемент: {failed}")

    zones = zones or ZoneMap(net, plan)
    branch = net.branches[failed]
    repair = branch.repair_time
    path = net.load_point_path(lp)
    if not path or net.feeder_of(load_point.at_node) != net.feeder_of(branch.to_node):
        return ImpactClass.UNAFFECTED, 0.0

    head = zones.zone[failed]
    if zones.zone[path[0]] == head:
        return ImpactClass.IN_ZONE_REPAIR, repair

    island_head = None
    for i, b_id in enumerate(path):
        if zones.zone[b_id] == head:
            # Точка ниже зоны отказа: остров отделяется выключателем path[i - 1]
            island_head = path[i - 1]
            break
    if island_head is None and isinstance(head, tuple):
        # Отказ в корневой зоне отключает выключатель фидера; точка за выключателем
        # на отходящей от шин ветви восстанавливается только резервированием
        island_head = path[-1]

    if island_head is not None:
        if zones.can_backfeed(island_head, params):
            return ImpactClass.BACKFED_SWITCHED, min(zones.switching_time(island_head, params), repair)
        return ImpactClass.IN_ZONE_REPAIR, repair

    # Точка выше зоны отказа: зону отделяет выключатель на ее голове
    return ImpactClass.UPSTREAM_SWITCHED, min(zones.switching_time(head, params), repair)


# ==================== ПОКАЗАТЕЛИ ТОЧЕК НАГРУЗКИ ====================

def _accumulate(
    net: Network, plan: "SwitchPlan", lp: str, params: ReliabilityParams, zones: ZoneMap,
    modes: List[FailureMode],
) -> LoadPointReliability:
    lambda_s = 0.0
    u_s = 0.0
    for mode in modes:
        impact, duration = classify_impact(net, plan, mode.component_id, lp, params, zones)
        if impact is ImpactClass.UNAFFECTED:
            continue
        lambda_s += mode.failure_rate
        u_s += mode.failure_rate * duration
    r_s = u_s / lambda_s if lambda_s > 0 else 0.0
    ens = max(net.load_points[lp].mean_active, 0.0) * u_s
    return LoadPointReliability(lambda_s=lambda_s, u_s=u_s, r_s=r_s, ens=ens)


def load_point_reliability(
    net: Network, plan: "SwitchPlan", lp: str, params: ReliabilityParams,
) -> LoadPointReliability:
    """λ_s, U_s, r_s и ENS одной точки нагрузки при заданном плане"""
    net.load_point(lp)
    return _accumulate(net, plan, lp, params, ZoneMap(net, plan), failure_modes(net))


def iter_reliability(
    net: Network, plan: "SwitchPlan", params: ReliabilityParams,
) -> Iterator[Tuple[str, LoadPointReliability]]:
    """Показатели всех точек нагрузки (зоны строятся один раз)"""
    zones = ZoneMap(net, plan)
    modes = failure_modes(net)
    for lp in net.load_point_list:
        yield lp.id, _accumulate(net, plan, lp.id, params, zones, modes)


def interruption_cost_rate(lp: LoadPoint) -> float:
    """Удельная стоимость недоотпуска IC = Σ AIC(класс) * доля(класс), $/кВт*ч"""
    return sum(lp.class_interrupt_cost.get(name, 0.0) * share for name, share in lp.class_mix.items())


def ens_objective(net: Network, plan: "SwitchPlan", params: ReliabilityParams) -> EnsObjective:
    """F2 = Σ IC_i * ENS_i * K_i по всем точкам нагрузки"""
    breakdown: Dict[str, LoadPointBreakdown] = {}
    f2 = 0.0
    total_ens = 0.0
    for lp_id, rel in iter_reliability(net, plan, params):
        lp = net.load_points[lp_id]
        ic = interruption_cost_rate(lp)
        contribution = ic * rel.ens * lp.importance
        breakdown[lp_id] = LoadPointBreakdown(
            load_point_id=lp_id,
            lambda_s=rel.lambda_s,
            u_s=rel.u_s,
            r_s=rel.r_s,
            ens=rel.ens,
            ic=ic,
            k=lp.importance,
            cost_contribution=contribution,
        )
        f2 += contribution
        total_ens += rel.ens
    logger.debug(f"F2={f2:.4f}, ENS={total_ens:.4f} кВт*ч/год для плана {plan}")
    return EnsObjective(f2=f2, total_ens_kwh=total_ens, breakdown=breakdown)
