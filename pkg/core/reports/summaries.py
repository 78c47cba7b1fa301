"""
Текстовые сводки: компромиссное решение, сравнение с базовым планом, сравнение с перебором
"""

import logging
from pathlib import Path
from typing import List, Optional

from ..placement import EvaluatedPlan, objective_vectors, recovered_fraction
from ..moo import dominates

logger = logging.getLogger(__name__)


def _plan_lines(e: EvaluatedPlan) -> List[str]:
    plan = e.plan
    switches = ", ".join(s.id for s in plan.installed_switch_sites) or "-"
    ties = ", ".join(s.id for s in plan.built_maneuver_sites) or "-"
    lines = [
        f"ds: {plan.switch_bits}",
        f"dt: {plan.maneuver_bits}",
        f"switches: {switches}",
        f"maneuver_points: {ties}",
        f"f1: {e.f1!r}",
        f"f2: {e.f2!r}",
    ]
    if e.cost is not None and e.reliability is not None:
        lines += [
            f"capital: {e.cost.capital!r}",
            f"maintenance_pw: {e.cost.maintenance_pw!r}",
            f"loss_pw: {e.cost.loss_pw!r}",
            f"ens_kwh: {e.reliability.total_ens_kwh!r}",
            f"loss_kw: {e.loss_kw!r}",
            f"voltage_violations: {e.voltage_violations}",
        ]
    if e.penalized:
        lines.append("penalized: true")
    return lines


def compromise_text(compromise: EvaluatedPlan, front_size: int, seed: int) -> str:
    lines = ["# compromise solution (max-min membership)", f"front_size: {front_size}", f"seed: {seed}"]
    lines += _plan_lines(compromise)
    return "\n".join(lines) + "\n"


def _change(new: float, old: float) -> str:
    if old == 0:
        return "n/a"
    return f"{(new - old) / old * 100.0:+.2f}%"


def comparison_text(baseline: EvaluatedPlan, optimized: EvaluatedPlan) -> str:
    """Сравнение базового (существующего) плана с компромиссным"""
    def _row(e: EvaluatedPlan) -> List[str]:
        ens = e.reliability.total_ens_kwh if e.reliability else float("nan")
        return [
            f"  cost: {e.f1!r}",
            f"  rcs_count: {len(e.plan.installed_switch_sites)}",
            f"  switches: {', '.join(s.id for s in e.plan.installed_switch_sites) or '-'}",
            f"  maneuver_points: {', '.join(s.id for s in e.plan.built_maneuver_sites) or '-'}",
            f"  ens_kwh: {ens!r}",
            f"  f2: {e.f2!r}",
        ]

    base_ens = baseline.reliability.total_ens_kwh if baseline.reliability else float("nan")
    opt_ens = optimized.reliability.total_ens_kwh if optimized.reliability else float("nan")
    lines = ["# baseline vs optimized", "baseline:"] + _row(baseline) + ["optimized:"] + _row(optimized)
    lines += [
        "change:",
        f"  cost: {_change(optimized.f1, baseline.f1)}",
        f"  ens_kwh: {_change(opt_ens, base_ens)}",
        f"  f2: {_change(optimized.f2, baseline.f2)}",
    ]
    return "\n".join(lines) + "\n"


def oracle_text(found: List[EvaluatedPlan], true_front: List[EvaluatedPlan]) -> str:
    """Сравнение найденного фронта с точным"""
    truth = objective_vectors(true_front)
    dominated = sum(1 for e in found if any(dominates(t, e.objectives) for t in truth))
    lines = [
        "# search front vs exhaustive front",
        f"true_front_vectors: {len(truth)}",
        f"found_vectors: {len(objective_vectors(found))}",
        f"recovered_fraction: {recovered_fraction(found, true_front)!r}",
        f"dominated_by_true_front: {dominated}",
    ]
    return "\n".join(lines) + "\n"


def write_text(path: Path, text: str):
    path.write_text(text, encoding="utf-8")
    logger.info(f"💾 {path.name}")


def validation_text(source: str, problems: Optional[List[str]]) -> str:
    if not problems:
        return f"✅ {source}: сеть корректна\n"
    return f"❌ {source}: нарушений {len(problems)}\n" + "".join(f"  - {p}\n" for p in problems)
