"""
Недоминируемая сортировка, расстояние скученности (CD) и динамическое CD

Все целевые функции минимизируются. Фронты и индексы возвращаются
в порядке исходной популяции (стабильно).
"""

import math
from typing import List, Sequence

import numpy as np

V_CLAMP = 1e-12


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """a доминирует b: не хуже по всем целям и строго лучше хотя бы по одной"""
    better = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            better = True
    return better


def fast_non_dominated_sort(objectives) -> List[List[int]]:
    """Разбиение на фронты; фронт 0 - недоминируемые индексы"""
    objs = np.asarray(objectives, dtype=float)
    n = len(objs)
    if n == 0:
        return []
    dominated_by: List[List[int]] = [[] for _ in range(n)]
    counts = [0] * n
    for p in range(n):
        for q in range(p + 1, n):
            le = objs[p] <= objs[q]
            ge = objs[p] >= objs[q]
            if le.all() and not ge.all():
                dominated_by[p].append(q)
                counts[q] += 1
            elif ge.all() and not le.all():
                dominated_by[q].append(p)
                counts[p] += 1

    fronts: List[List[int]] = [[i for i in range(n) if counts[i] == 0]]
    while True:
        nxt = []
        for p in fronts[-1]:
            for q in dominated_by[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    nxt.append(q)
        if not nxt:
            break
        fronts.append(sorted(nxt))
    return fronts


def _neighbor_gaps(objs: np.ndarray) -> np.ndarray:
    """
    Нормированные разности соседей |f_(i+1) - f_(i-1)| / размах по каждой цели.
    Для крайних точек - inf; нулевой размах дает 0.
    """
    n, r = objs.shape
    gaps = np.zeros((n, r))
    for k in range(r):
        order = np.argsort(objs[:, k], kind="stable")
        column = objs[order, k]
        span = column[-1] - column[0]
        gaps[order[0], k] = math.inf
        gaps[order[-1], k] = math.inf
        if n > 2:
            inner = (column[2:] - column[:-2]) / span if span > 0 else np.zeros(n - 2)
            gaps[order[1:-1], k] = inner
    return gaps


def crowding_distance(objectives) -> np.ndarray:
    """CD_i = (1/r) * Σ_k нормированная разность соседей; крайние точки - inf"""
    objs = np.asarray(objectives, dtype=float)
    n = len(objs)
    if n == 0:
        return np.zeros(0)
    if n <= 2:
        return np.full(n, math.inf)
    return _neighbor_gaps(objs).mean(axis=1)


def gap_variance(objectives) -> np.ndarray:
    """V_i = (1/r) * Σ_k (разность_k - CD_i)^2; для крайних точек inf"""
    objs = np.asarray(objectives, dtype=float)
    n = len(objs)
    if n <= 2:
        return np.full(n, math.inf)
    gaps = _neighbor_gaps(objs)
    cd = gaps.mean(axis=1)
    finite = np.isfinite(cd)
    variance = np.full(n, math.inf)
    variance[finite] = ((gaps[finite] - cd[finite, None]) ** 2).mean(axis=1)
    return variance


def dcd_value(cd, v):
    """DCD = CD / ln(1/V), V ограничивается [1e-12, 1 - 1e-12]"""
    cd = np.asarray(cd, dtype=float)
    v = np.clip(np.asarray(v, dtype=float), V_CLAMP, 1.0 - V_CLAMP)
    with np.errstate(invalid="ignore"):
        return np.where(np.isinf(cd), math.inf, cd / np.log(1.0 / v))


def dynamic_crowding_distance(objectives) -> np.ndarray:
    """DCD всех точек фронта"""
    objs = np.asarray(objectives, dtype=float)
    n = len(objs)
    if n <= 2:
        return np.full(n, math.inf)
    return dcd_value(crowding_distance(objs), gap_variance(objs))


def dcd_trim(objectives, target_size: int) -> List[int]:
    """
    Сокращение фронта до target_size: по одной удаляется точка с минимальным DCD,
    после каждого удаления DCD пересчитывается. Возвращает индексы оставшихся точек.
    """
    if target_size < 2:
        raise ValueError(f"target_size должен быть >= 2, получено {target_size}")
    objs = np.asarray(objectives, dtype=float)
    keep = list(range(len(objs)))
    while len(keep) > target_size:
        dcd = dynamic_crowding_distance(objs[keep])
        keep.pop(int(np.argmin(dcd)))
    return keep
