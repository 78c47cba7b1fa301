"""
Тестовые задачи для проверки эволюционного поиска
"""

from typing import Callable, Sequence

import numpy as np


class ConvexFront:
    """
    Двухкритериальная задача с выпуклым фронтом:
        f1 = x1,  g = 1 + 9 * mean(x2..xn),  f2 = g * (1 - sqrt(f1 / g))
    Оптимальный фронт f2 = 1 - sqrt(f1) при x2..xn = 0.
    """

    n_obj = 2

    def __init__(self, n_var: int = 2):
        if n_var < 2:
            raise ValueError("n_var должен быть >= 2")
        self.n_var = n_var
        self.lower = np.zeros(n_var)
        self.upper = np.ones(n_var)

    def evaluate(self, genotype: np.ndarray) -> Sequence[float]:
        x = np.asarray(genotype, dtype=float)
        f1 = float(x[0])
        g = 1.0 + 9.0 * float(np.mean(x[1:]))
        return f1, g * (1.0 - np.sqrt(f1 / g))

    @staticmethod
    def pareto_curve(f1: np.ndarray) -> np.ndarray:
        return 1.0 - np.sqrt(f1)


class SingleOptimum:
    """Обе цели - число генов ниже 0.5 (вторая удвоена); оптимум (0, 0) доминирует все"""

    n_obj = 2

    def __init__(self, n_var: int = 4):
        self.n_var = n_var
        self.lower = np.zeros(n_var)
        self.upper = np.ones(n_var)

    def evaluate(self, genotype: np.ndarray) -> Sequence[float]:
        misses = float(np.sum(np.asarray(genotype) < 0.5))
        return misses, 2.0 * misses


def front_distance(points, curve: Callable[[np.ndarray], np.ndarray], samples: int = 10001) -> float:
    """Максимальное расстояние от точек до кривой f2 = curve(f1), f1 в [0, 1]"""
    t = np.linspace(0.0, 1.0, samples)
    reference = np.column_stack([t, curve(t)])
    worst = 0.0
    for p in np.asarray(points, dtype=float):
        worst = max(worst, float(np.min(np.linalg.norm(reference - p, axis=1))))
    return worst
