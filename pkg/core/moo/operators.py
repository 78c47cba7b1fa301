"""
Вещественные генетические операторы: SBX-скрещивание и полиномиальная мутация

Случайные числа передаются явно (draws), поэтому операторы детерминированы
и проверяются на конкретных значениях.
"""

from typing import Optional, Tuple

import numpy as np


def sbx_beta(u, eta_c: float):
    """Коэффициент разброса β по равномерной величине u"""
    u = np.asarray(u, dtype=float)
    exponent = 1.0 / (eta_c + 1.0)
    with np.errstate(divide="ignore"):
        low = np.power(2.0 * u, exponent)
        high = np.power(1.0 / (2.0 * (1.0 - u)), exponent)
    return np.where(u <= 0.5, low, high)


def sbx_crossover(
    p1: np.ndarray,
    p2: np.ndarray,
    eta_c: float,
    draws: np.ndarray,
    lower: Optional[np.ndarray] = None,
    upper: Optional[np.ndarray] = None,
    clip: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Пара потомков SBX по генам:
        c1 = 0.5 * ((1 + β) * p1 + (1 - β) * p2)
        c2 = 0.5 * ((1 - β) * p1 + (1 + β) * p2)
    При clip=True потомки обрезаются по границам (если границы заданы).
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError(f"родители разной длины: {p1.shape} и {p2.shape}")
    beta = sbx_beta(draws, eta_c)
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    if clip and lower is not None and upper is not None:
        c1 = np.clip(c1, lower, upper)
        c2 = np.clip(c2, lower, upper)
    return c1, c2


def mutation_delta(r, eta_m: float):
    """
    δ полиномиальной мутации:
        r < 0.5:  (2r)^(1/(η+1)) - 1
        r >= 0.5: 1 - (2(1 - r))^(1/(η+1))
    """
    r = np.asarray(r, dtype=float)
    exponent = 1.0 / (eta_m + 1.0)
    return np.where(
        r < 0.5,
        np.power(2.0 * r, exponent) - 1.0,
        1.0 - np.power(2.0 * (1.0 - r), exponent),
    )


def polynomial_mutation(
    x: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    eta_m: float,
    draws: np.ndarray,
    mask: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Ограниченная полиномиальная мутация: y = x + (x_U - x_L) * δ_q.
    δ_q учитывает относительные расстояния до границ δ1 = (x - x_L) / (x_U - x_L),
    δ2 = (x_U - x) / (x_U - x_L); вдали от границ δ_q совпадает с mutation_delta.
    Мутируют только гены с mask=True.
    """
    x = np.asarray(x, dtype=float)
    lower = np.broadcast_to(np.asarray(lower, dtype=float), x.shape)
    upper = np.broadcast_to(np.asarray(upper, dtype=float), x.shape)
    r = np.asarray(draws, dtype=float)
    span = upper - lower
    safe_span = np.where(span > 0.0, span, 1.0)
    delta_1 = (x - lower) / safe_span
    delta_2 = (upper - x) / safe_span
    exponent = 1.0 / (eta_m + 1.0)

    low_side = 2.0 * r + (1.0 - 2.0 * r) * np.power(1.0 - delta_1, eta_m + 1.0)
    high_side = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * np.power(1.0 - delta_2, eta_m + 1.0)
    delta_q = np.where(
        r < 0.5,
        np.power(np.maximum(low_side, 0.0), exponent) - 1.0,
        1.0 - np.power(np.maximum(high_side, 0.0), exponent),
    )
    y = x + span * delta_q
    if mask is not None:
        y = np.where(mask, y, x)
    return np.clip(y, lower, upper)
