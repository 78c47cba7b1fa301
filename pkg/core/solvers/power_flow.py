"""
Потокораспределение радиальной сети методом обратного-прямого хода

Обратный ход: от конечных узлов к источнику считаются токи узлов I = (S / V)*,
токи ветвей суммируются по закону Кирхгофа, оценка напряжения поднимается к источнику.
Прямой ход: от источника к концам V_i = V_(i-1) - Z * I_(i-1,i).
Все величины в о.е. на базе Network.base_kva; потери в кВт.
Расчет сошелся, когда изменение напряжения меньше tolerance, а токи, пересчитанные
по итоговым напряжениям, дают небаланс активной мощности меньше BALANCE_TOLERANCE.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import PowerFlowError, SolverError, UnknownElementError
from ..network import Network

logger = logging.getLogger(__name__)

# Допустимый небаланс активной мощности сошедшегося расчета, о.е.
BALANCE_TOLERANCE = 1e-10


class PowerFlowSettings(BaseModel):
    """Параметры расчета потокораспределения"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tolerance: float = Field(default=1e-6, gt=0.0)  # о.е. напряжения
    max_iterations: int = Field(default=100, ge=1)
    source_voltage: float = Field(default=1.0, gt=0.0)
    v_min: float = 0.95
    v_max: float = 1.05

    @model_validator(mode="after")
    def _limits(self) -> "PowerFlowSettings":
        if self.v_min > self.v_max:
            raise ValueError("v_min больше v_max")
        return self


@dataclass
class PowerFlowState:
    """Результат расчета: напряжения узлов, токи и потери ветвей"""
    voltages: Dict[str, complex]
    branch_currents: Dict[str, complex]
    node_currents: Dict[str, complex]
    branch_loss_active: Dict[str, float]  # кВт
    total_loss_active: float  # кВт
    source_power: Dict[str, complex]  # о.е., по источникам
    iterations: int
    converged: bool
    source_mismatch: float = 0.0  # |V_ист оценка| - заданное, последний обратный ход
    history: Tuple[float, ...] = field(default_factory=tuple)  # max изменение напряжения по итерациям

    def voltage_magnitudes(self) -> Dict[str, float]:
        return {node_id: abs(v) for node_id, v in self.voltages.items()}

    def voltage_violations(self, settings: PowerFlowSettings) -> Dict[str, float]:
        """Узлы с напряжением вне [v_min, v_max]"""
        return {
            node_id: mag for node_id, mag in self.voltage_magnitudes().items()
            if mag < settings.v_min or mag > settings.v_max
        }


def mean_loads(net: Network) -> Dict[str, Tuple[float, float]]:
    """Средние нагрузки всех точек (кВт, квар)"""
    return {lp.id: (lp.mean_active, lp.mean_reactive) for lp in net.load_point_list}


def solve_power_flow(
    net: Network,
    loads: Optional[Mapping[str, Tuple[float, float]]] = None,
    settings: Optional[PowerFlowSettings] = None,
) -> PowerFlowState:
    """
    Расчет обратным-прямым ходом с плоским стартом (все напряжения = source_voltage).
    Токи, потери и мощность источников в результате соответствуют итоговым напряжениям.
    При отсутствии сходимости за max_iterations возвращается состояние с converged=False.
    """
    settings = settings or PowerFlowSettings()
    loads = mean_loads(net) if loads is None else loads

    # Мощность узлов в о.е. (нагрузка положительна)
    node_power: Dict[str, complex] = {node_id: 0j for node_id in net.nodes}
    for lp_id, (p_kw, q_kvar) in loads.items():
        if lp_id not in net.load_points:
            raise UnknownElementError(f"нагрузка задана для неизвестной точки: {lp_id}")
        node_power[net.load_points[lp_id].at_node] += complex(p_kw, q_kvar) / net.base_kva

    order = net.branch_order
    branches = [net.branches[b_id] for b_id in order]
    impedance = {b.id: complex(b.resistance, b.reactance) for b in branches}
    sources = net.sources
    v_source = complex(settings.source_voltage, 0.0)

    voltages: Dict[str, complex] = {node_id: v_source for node_id in net.nodes}
    node_currents: Dict[str, complex] = {}
    branch_currents: Dict[str, complex] = {}
    history = []
    converged = False
    mismatch = 0.0
    residual = 0.0
    load_active = sum(s.real for s in node_power.values())

    while True:
        # Обратный ход по текущим напряжениям: токи узлов (1), токи ветвей (2), оценка напряжения к источнику
        for node_id, s in node_power.items():
            v = voltages[node_id]
            if v == 0:
                raise PowerFlowError(f"нулевое напряжение в узле {node_id} на итерации {len(history) + 1}")
            node_currents[node_id] = (s / v).conjugate()
        estimate: Dict[str, complex] = {}
        for b in reversed(branches):
            current = node_currents[b.to_node]
            for child in net.child_branches(b.to_node):
                current += branch_currents[child]
            branch_currents[b.id] = current
            v_end = estimate.get(b.to_node, voltages[b.to_node])
            estimate[b.from_node] = v_end + impedance[b.id] * current
        mismatch = max(
            (abs(abs(estimate.get(s, v_source)) - settings.source_voltage) for s in sources),
            default=0.0,
        )

        # Токи согласованы с напряжениями: состояние можно принять
        losses_pu = {b.id: b.resistance * abs(branch_currents[b.id]) ** 2 for b in branches}
        source_power = _source_power(net, voltages, node_currents, branch_currents)
        residual = sum(p.real for p in source_power.values()) - load_active - sum(losses_pu.values())
        if history and history[-1] < settings.tolerance and abs(residual) < BALANCE_TOLERANCE:
            converged = True
            break
        if len(history) >= settings.max_iterations:
            break

        # Прямой ход (3)
        updated: Dict[str, complex] = dict(voltages)
        for s in sources:
            updated[s] = v_source
        for b in branches:
            updated[b.to_node] = updated[b.from_node] - impedance[b.id] * branch_currents[b.id]

        history.append(max((abs(updated[n] - voltages[n]) for n in net.nodes), default=0.0))
        voltages = updated

    if converged:
        logger.debug(f"⚡ {net.name}: {len(history)} итераций, небаланс {residual:.2e} о.е., "
                     f"расхождение напряжения источника {mismatch:.2e} о.е.")
    else:
        logger.warning(f"⚠️ Потокораспределение {net.name} не сошлось за {settings.max_iterations} итераций "
                       f"(изменение {history[-1] if history else 0.0:.3e}, небаланс {residual:.3e})")

    losses = {b_id: loss * net.base_kva for b_id, loss in losses_pu.items()}
    return PowerFlowState(
        voltages=voltages,
        branch_currents=branch_currents,
        node_currents=node_currents,
        branch_loss_active=losses,
        total_loss_active=float(sum(losses.values())),
        source_power=source_power,
        iterations=len(history),
        converged=converged,
        source_mismatch=float(mismatch),
        history=tuple(history),
    )


def _source_power(
    net: Network,
    voltages: Mapping[str, complex],
    node_currents: Mapping[str, complex],
    branch_currents: Mapping[str, complex],
) -> Dict[str, complex]:
    """Мощность, отдаваемая каждым источником, о.е."""
    result: Dict[str, complex] = {}
    for s in net.sources:
        out = node_currents.get(s, 0j) + sum((branch_currents[c] for c in net.child_branches(s)), 0j)
        result[s] = voltages[s] * out.conjugate()
    return result


def branch_losses(state: PowerFlowState, net: Network) -> Dict[str, float]:
    """Активные потери по ветвям R*|I|^2, кВт (только для сошедшегося расчета)"""
    if not state.converged:
        raise SolverError("потери запрошены для несошедшегося потокораспределения")
    return {
        b_id: net.branches[b_id].resistance * abs(state.branch_currents.get(b_id, 0j)) ** 2 * net.base_kva
        for b_id in net.branch_order
    }


def energy_balance(state: PowerFlowState, net: Network, loads: Optional[Mapping[str, Tuple[float, float]]] = None) -> float:
    """Небаланс активной мощности, о.е.: генерация источников - нагрузки - потери"""
    loads = mean_loads(net) if loads is None else loads
    injected = sum(p.real for p in state.source_power.values())
    consumed = sum(p for p, _ in loads.values()) / net.base_kva
    return float(injected - consumed - state.total_loss_active / net.base_kva)
