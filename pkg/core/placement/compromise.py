"""
Выбор компромиссного решения на фронте Парето
"""

from typing import List, Sequence, Tuple

import numpy as np

from .evaluation import EvaluatedPlan


def memberships(objectives: Sequence[Tuple[float, ...]]) -> np.ndarray:
    """
    Функции принадлежности 1 - (f - min) / (max - min) по каждой цели.
    При нулевом размахе принадлежность равна 1.
    """
    objs = np.asarray(objectives, dtype=float)
    low = objs.min(axis=0)
    span = objs.max(axis=0) - low
    normalized = np.divide(objs - low, span, out=np.zeros_like(objs), where=span > 0)
    return 1.0 - normalized


def select_compromise(front: List[EvaluatedPlan]) -> EvaluatedPlan:
    """Член фронта с максимальной минимальной принадлежностью; при равенстве - меньший F1, затем первый"""
    if not front:
        raise ValueError("фронт пуст")
    score = memberships([e.objectives for e in front]).min(axis=1)
    best = 0
    for i in range(1, len(front)):
        if score[i] > score[best] or (score[i] == score[best] and front[i].f1 < front[best].f1):
            best = i
    return front[best]
