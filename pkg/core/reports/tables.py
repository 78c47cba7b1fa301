"""
CSV-отчеты. Порядок колонок - часть формата (docs/FORMATS.md).
Числа пишутся через repr(float): точность полного обратного преобразования.
"""

import cmath
import csv
import logging
import math
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from ..network import Network
from ..placement import EvaluatedPlan
from ..solvers import EnsObjective, MonteCarloEstimate, PowerFlowSettings, PowerFlowState

logger = logging.getLogger(__name__)

PARETO_COLUMNS = ["ds", "dt", "f1", "f2", "capital", "maintenance_pw", "loss_pw", "ens_kwh"]
STATS_COLUMNS = ["generation", "front0_size", "hypervolume", "best_f1", "best_f2"]
ENS_COLUMNS = ["load_point_id", "lambda_s", "u_s", "r_s", "ens", "ic", "k", "cost_contribution"]
VOLTAGE_COLUMNS = ["node_id", "feeder", "v_magnitude", "v_angle_deg", "in_limits"]
LOSS_COLUMNS = ["branch_id", "from_node", "to_node", "current_pu", "loss_kw"]
MC_COLUMNS = ["load_point_id", "ens_mean", "ens_std_error", "ens_analytical"]


def fmt(value) -> str:
    """Число для CSV: repr для float, true/false для bool"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence]):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        count = 0
        for row in rows:
            writer.writerow([fmt(v) for v in row])
            count += 1
    logger.info(f"💾 {path.name}: {count} строк")


# ==================== ФРОНТ ПАРЕТО ====================

def pareto_rows(front: Sequence[EvaluatedPlan]) -> List[list]:
    rows = []
    for e in front:
        if e.cost is None or e.reliability is None:
            rows.append([e.plan.switch_bits, e.plan.maneuver_bits, e.f1, e.f2, "", "", "", ""])
            continue
        rows.append([
            e.plan.switch_bits, e.plan.maneuver_bits, float(e.f1), float(e.f2),
            float(e.cost.capital), float(e.cost.maintenance_pw), float(e.cost.loss_pw),
            float(e.reliability.total_ens_kwh),
        ])
    return rows


def write_pareto(path: Path, front: Sequence[EvaluatedPlan]):
    write_csv(path, PARETO_COLUMNS, pareto_rows(front))


def write_stats(path: Path, history) -> None:
    rows = []
    for s in history:
        best = list(s.best) + [math.nan] * (2 - len(s.best))
        rows.append([s.generation, s.front0_size, float(s.hypervolume), float(best[0]), float(best[1])])
    write_csv(path, STATS_COLUMNS, rows)


# ==================== НАДЕЖНОСТЬ ====================

def write_ens(path: Path, objective: EnsObjective):
    rows = [
        [b.load_point_id] + [float(v) for v in (b.lambda_s, b.u_s, b.r_s, b.ens, b.ic, b.k, b.cost_contribution)]
        for b in objective.breakdown.values()
    ]
    write_csv(path, ENS_COLUMNS, rows)


def write_ens_monte_carlo(
    path: Path, estimates: Mapping[str, MonteCarloEstimate], analytical: EnsObjective,
):
    rows = [
        [lp_id, float(est.ens), float(est.std_error), float(analytical.breakdown[lp_id].ens)]
        for lp_id, est in estimates.items()
    ]
    write_csv(path, MC_COLUMNS, rows)


# ==================== ПОТОКОРАСПРЕДЕЛЕНИЕ ====================

def voltage_rows(net: Network, state: PowerFlowState, settings: PowerFlowSettings) -> List[list]:
    rows = []
    for node in net.node_list:
        v = state.voltages[node.id]
        magnitude = abs(v)
        rows.append([
            node.id,
            net.feeder_of(node.id),
            float(magnitude),
            float(math.degrees(cmath.phase(v))),
            settings.v_min <= magnitude <= settings.v_max,
        ])
    return rows


def write_voltages(path: Path, net: Network, state: PowerFlowState, settings: PowerFlowSettings):
    write_csv(path, VOLTAGE_COLUMNS, voltage_rows(net, state, settings))


def write_losses(path: Path, net: Network, state: PowerFlowState, losses: Optional[Dict[str, float]] = None):
    losses = state.branch_loss_active if losses is None else losses
    rows = [
        [b.id, b.from_node, b.to_node, float(abs(state.branch_currents.get(b.id, 0j))), float(losses[b.id])]
        for b in net.branch_list
    ]
    write_csv(path, LOSS_COLUMNS, rows)
