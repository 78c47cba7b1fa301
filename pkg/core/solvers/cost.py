"""
Первая целевая функция: стоимость размещения выключателей и пунктов маневра

F1 = капитальные затраты (выключатели + пункты маневра)
   + обслуживание, приведенное по годам горизонта
   + стоимость потерь, приведенная по годам горизонта
Коэффициент приведения за год P_w = (1 + инфляция) / (1 + ставка), год t умножается на P_w^t.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import ConfigError

if TYPE_CHECKING:
    from ..placement.plan import SwitchPlan

logger = logging.getLogger(__name__)

SWITCH_PRICE = 4700.0
MAINTENANCE_FRACTION = 0.02
HOURS_PER_YEAR = 8760.0


class CostParams(BaseModel):
    """Экономические параметры (денежная единица одна для всех сумм)"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    switch_cost: Optional[float] = Field(default=SWITCH_PRICE, ge=0.0)  # None - build_cost кандидата
    maneuver_costs: Dict[str, float] = Field(default_factory=dict)  # id -> CT_j, иначе build_cost
    maintenance_fraction: float = Field(default=MAINTENANCE_FRACTION, ge=0.0)
    maintenance_override: Optional[float] = Field(default=None, ge=0.0)  # фиксированное MC за год
    inflation: float = Field(default=0.0, gt=-1.0)
    interest: float = Field(default=0.0, gt=-1.0)
    horizon_years: int = Field(default=1, ge=1)
    loss_cost_rate: float = Field(default=0.0, ge=0.0)  # $/кВт*ч
    hours_per_year: float = Field(default=HOURS_PER_YEAR, gt=0.0)

    @field_validator("maneuver_costs")
    @classmethod
    def _non_negative(cls, value: Dict[str, float]) -> Dict[str, float]:
        negative = sorted(k for k, v in value.items() if v < 0)
        if negative:
            raise ValueError(f"отрицательная стоимость пунктов маневра: {negative}")
        return value


@dataclass(frozen=True)
class CostBreakdown:
    """Составляющие F1"""
    switch_capital: float
    maneuver_capital: float
    maintenance_pw: float
    loss_pw: float

    @property
    def capital(self) -> float:
        return self.switch_capital + self.maneuver_capital

    @property
    def total(self) -> float:
        return self.switch_capital + self.maneuver_capital + self.maintenance_pw + self.loss_pw


def present_worth_factor(infr: float, intr: float) -> float:
    """Коэффициент приведения за один год P_w = (1 + Infr) / (1 + Intr)"""
    if intr == -1.0:
        raise ConfigError("ставка дисконтирования -1 делает коэффициент приведения неопределенным")
    return (1.0 + infr) / (1.0 + intr)


def cumulative_present_worth(params: CostParams) -> float:
    """Сумма P_w^t по годам t = 1..ny"""
    pw = present_worth_factor(params.inflation, params.interest)
    if pw == 1.0:
        return float(params.horizon_years)
    return sum(pw ** t for t in range(1, params.horizon_years + 1))


def placement_cost(
    plan: "SwitchPlan",
    params: CostParams,
    annual_loss_kw: Mapping[str, float],
) -> CostBreakdown:
    """
    F1 плана. annual_loss_kw - потери по ветвям (кВт) сошедшегося расчета
    нормального режима; переводятся в энергию через hours_per_year.
    """
    switch_capital = 0.0
    for site in plan.installed_switch_sites:
        switch_capital += params.switch_cost if params.switch_cost is not None else site.build_cost
    maneuver_capital = 0.0
    for site in plan.built_maneuver_sites:
        maneuver_capital += params.maneuver_costs.get(site.id, site.build_cost)

    factor = cumulative_present_worth(params)
    capital = switch_capital + maneuver_capital
    # Фиксированное MC начисляется только при наличии оборудования
    if params.maintenance_override is not None and capital > 0:
        annual_maintenance = params.maintenance_override
    else:
        annual_maintenance = params.maintenance_fraction * capital
    maintenance_pw = factor * annual_maintenance
    loss_energy = sum(annual_loss_kw.values()) * params.hours_per_year
    loss_pw = loss_energy * params.loss_cost_rate * factor

    breakdown = CostBreakdown(
        switch_capital=switch_capital,
        maneuver_capital=maneuver_capital,
        maintenance_pw=maintenance_pw,
        loss_pw=loss_pw,
    )
    logger.debug(f"F1={breakdown.total:.4f} (капитал {capital:.2f}, обслуживание {maintenance_pw:.2f}, "
                 f"потери {loss_pw:.2f})")
    return breakdown
