"""
Последовательное моделирование Монте-Карло для проверки аналитической оценки ENS

Для каждого элемента моделируется цепочка "работа - ремонт": время до отказа
экспоненциально с интенсивностью λ, ремонт фиксированной длительности.
Каждый отказ классифицируется тем же classify_impact, что и в аналитике.
"""

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Optional, Union

import numpy as np

from ..network import LoadPoint, Network
from .reliability import ImpactClass, ReliabilityParams, ZoneMap, classify_impact, failure_modes

if TYPE_CHECKING:
    from ..placement.plan import SwitchPlan

logger = logging.getLogger(__name__)

HOURS_PER_YEAR = 8760.0
BLOCK_YEARS = 100_000


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Оценка ENS точки нагрузки по смоделированным годам"""
    ens: float  # кВт*ч/год
    std_error: float
    outage_hours: float  # ч/год


def sample_load(lp: LoadPoint, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Нагрузка из нормального распределения N(μ, σ) по стандартной нормальной величине u.
    Для потребителей отрицательные значения обрезаются до нуля.
    """
    value = lp.mean_active + lp.sigma_active * np.asarray(u, dtype=float)
    if not lp.is_generation:
        value = np.maximum(value, 0.0)
    return float(value) if np.ndim(value) == 0 else value


def _event_years(rate: float, repair_hours: float, years: int, rng: np.random.Generator) -> np.ndarray:
    """Годы, в которые происходят отказы элемента (по возрастанию)"""
    if rate <= 0.0:
        return np.empty(0, dtype=np.int64)
    repair_years = repair_hours / HOURS_PER_YEAR
    chunk = max(16, int(rate * years * 1.1) + 16)
    events = []
    t0 = 0.0
    while True:
        gaps = rng.exponential(1.0 / rate, size=chunk)
        times = t0 + np.cumsum(gaps) + np.arange(chunk) * repair_years
        inside = times[times < years]
        events.append(inside)
        if inside.size < chunk:
            break
        t0 = times[-1] + repair_years
    return np.floor(np.concatenate(events)).astype(np.int64)


def monte_carlo_ens(
    net: Network,
    plan: "SwitchPlan",
    params: ReliabilityParams,
    years: int,
    seed: int,
    sample_loads: bool = False,
) -> Dict[str, MonteCarloEstimate]:
    """
    ENS каждой точки нагрузки по years смоделированным годам со стандартной ошибкой.
    Результат воспроизводим при одинаковом seed.
    """
    if years < 1:
        raise ValueError("years должен быть >= 1")
    rng = np.random.default_rng(seed)
    zones = ZoneMap(net, plan)
    modes = failure_modes(net)
    lp_ids = [lp.id for lp in net.load_point_list]

    # Длительность перерыва точки нагрузки при отказе каждого элемента
    durations = np.zeros((len(modes), len(lp_ids)))
    for c, mode in enumerate(modes):
        for j, lp_id in enumerate(lp_ids):
            impact, hours = classify_impact(net, plan, mode.component_id, lp_id, params, zones)
            if impact is not ImpactClass.UNAFFECTED:
                durations[c, j] = hours

    events = [_event_years(m.failure_rate, m.repair_time, years, rng) for m in modes]
    power = np.array([max(lp.mean_active, 0.0) for lp in net.load_point_list])

    sum_ens = np.zeros(len(lp_ids))
    sum_sq = np.zeros(len(lp_ids))
    sum_hours = np.zeros(len(lp_ids))
    for start in range(0, years, BLOCK_YEARS):
        stop = min(start + BLOCK_YEARS, years)
        hours = np.zeros((len(lp_ids), stop - start))
        for c, ev in enumerate(events):
            if not durations[c].any() or ev.size == 0:
                continue
            lo, hi = np.searchsorted(ev, [start, stop])
            if lo == hi:
                continue
            counts = np.bincount(ev[lo:hi] - start, minlength=stop - start)
            hours += np.outer(durations[c], counts)
        if sample_loads:
            z = rng.standard_normal((len(lp_ids), stop - start))
            load = np.vstack([sample_load(lp, z[j]) for j, lp in enumerate(net.load_point_list)])
            load = np.maximum(load, 0.0)
        else:
            load = power[:, None]
        ens = hours * load
        sum_ens += ens.sum(axis=1)
        sum_sq += (ens ** 2).sum(axis=1)
        sum_hours += hours.sum(axis=1)

    estimates: Dict[str, MonteCarloEstimate] = {}
    for j, lp_id in enumerate(lp_ids):
        mean = sum_ens[j] / years
        if years > 1:
            variance = max(sum_sq[j] / years - mean ** 2, 0.0) * years / (years - 1)
            std_error = math.sqrt(variance / years)
        else:
            std_error = 0.0
        estimates[lp_id] = MonteCarloEstimate(ens=mean, std_error=std_error, outage_hours=sum_hours[j] / years)
    logger.info(f"🎲 Монте-Карло: {years} лет, seed={seed}, {len(lp_ids)} точек нагрузки")
    return estimates


def expected_ens_over_loads(
    net: Network,
    u_s: Dict[str, float],
    samples: int,
    seed: Optional[int] = None,
) -> Dict[str, float]:
    """Средняя ENS по выборке нагрузок: mean(sample_load) * U_s для каждой точки"""
    rng = np.random.default_rng(seed)
    result: Dict[str, float] = {}
    for lp in net.load_point_list:
        draws = sample_load(lp, rng.standard_normal(samples))
        result[lp.id] = float(np.mean(np.maximum(draws, 0.0))) * u_s[lp.id]
    return result
