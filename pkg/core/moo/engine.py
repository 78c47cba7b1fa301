"""
Модифицированный NSGA-II с динамическим расстоянием скученности

Поколение: бинарный турнир по (ранг, CD) -> SBX -> полиномиальная мутация ->
оценка потомков -> объединение с родителями (элитизм) -> заполнение по фронтам,
разрезаемый фронт сокращается через dcd_trim.
Все случайные числа поколения генерируются до оценки потомков, поэтому
параллельная оценка не меняет результат.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Protocol, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pymoo.indicators.hv import HV

from ..errors import OptimizationError
from .operators import polynomial_mutation, sbx_crossover
from .sorting import crowding_distance, dcd_trim, dominates, fast_non_dominated_sort

logger = logging.getLogger(__name__)

MapFn = Callable[[Callable, Iterable], Iterable]
REFERENCE_MARGIN = 0.1
PROGRESS_EVERY = 10


class GAParams(BaseModel):
    """Параметры эволюционного поиска"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    population_size: int = Field(default=30, ge=4)
    generations: int = Field(default=100, ge=0)
    crossover_probability: float = Field(default=0.9, ge=0.0, le=1.0)
    # None - 1 / число генов
    mutation_probability_per_gene: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    eta_c: float = Field(default=20.0, gt=0.0)
    eta_m: float = Field(default=20.0, gt=0.0)
    seed: int = 42
    reference_point: Optional[List[float]] = None

    @field_validator("population_size")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"population_size должен быть четным, получено {value}")
        return value


class Problem(Protocol):
    """Задача минимизации над вектором генов в границах [lower, upper]"""

    n_var: int
    n_obj: int
    lower: np.ndarray
    upper: np.ndarray

    def evaluate(self, genotype: np.ndarray) -> Sequence[float]:
        ...


@dataclass
class Individual:
    genotype: np.ndarray
    objectives: Optional[np.ndarray] = None
    rank: int = 0
    diversity: float = 0.0


@dataclass(frozen=True)
class GenerationStats:
    """Строка статистики поколения"""
    generation: int
    front0_size: int
    hypervolume: float
    best: tuple  # минимум каждой цели по архиву


@dataclass
class EvolutionResult:
    """Архив недоминируемых решений и история поиска"""
    archive: List[Individual]
    population: List[Individual]
    history: List[GenerationStats] = field(default_factory=list)
    reference_point: Optional[np.ndarray] = None
    evaluations: int = 0

    @property
    def front(self) -> List[Individual]:
        return self.archive


# ==================== АРХИВ ====================

class ParetoArchive:
    """Все недоминируемые векторы целей, найденные за поиск (первый генотип на вектор)"""

    def __init__(self):
        self.members: List[Individual] = []

    def add(self, candidate: Individual) -> bool:
        f = candidate.objectives
        for member in self.members:
            if dominates(member.objectives, f) or np.array_equal(member.objectives, f):
                return False
        self.members = [m for m in self.members if not dominates(f, m.objectives)]
        self.members.append(Individual(genotype=candidate.genotype.copy(), objectives=f.copy()))
        return True

    def update(self, individuals: Iterable[Individual]):
        for ind in individuals:
            self.add(ind)

    def objectives(self) -> np.ndarray:
        return np.array([m.objectives for m in self.members])

    def sorted(self) -> List[Individual]:
        return sorted(self.members, key=lambda m: tuple(m.objectives))


def hypervolume(points: np.ndarray, reference_point: np.ndarray) -> float:
    """Гиперобъем точек, строго лучших опорной точки по всем целям"""
    if len(points) == 0:
        return 0.0
    inside = points[(points < reference_point).all(axis=1)]
    if len(inside) == 0:
        return 0.0
    return float(HV(ref_point=reference_point)(inside))


def _reference_from(objectives: np.ndarray) -> np.ndarray:
    worst = objectives.max(axis=0)
    span = worst - objectives.min(axis=0)
    margin = np.where(span > 0, span, np.maximum(np.abs(worst), 1.0)) * REFERENCE_MARGIN
    return worst + margin


# ==================== ШАГИ ПОКОЛЕНИЯ ====================

def _evaluate(problem: Problem, genotypes: List[np.ndarray], map_fn: MapFn) -> List[Individual]:
    results = list(map_fn(problem.evaluate, genotypes))
    individuals = []
    for genotype, values in zip(genotypes, results):
        objectives = np.asarray(values, dtype=float)
        if objectives.shape != (problem.n_obj,) or not np.all(np.isfinite(objectives)):
            raise OptimizationError(f"нечисловые значения целевых функций {values} для генотипа {genotype}")
        individuals.append(Individual(genotype=genotype, objectives=objectives))
    return individuals


def _assign_rank_and_diversity(population: List[Individual]) -> List[List[int]]:
    objs = np.array([ind.objectives for ind in population])
    fronts = fast_non_dominated_sort(objs)
    for rank, front in enumerate(fronts):
        cd = crowding_distance(objs[front])
        for idx, value in zip(front, cd):
            population[idx].rank = rank
            population[idx].diversity = float(value)
    return fronts


def _better(a: int, b: int, population: List[Individual]) -> int:
    """Победитель турнира: меньший ранг, затем большее CD, затем меньший индекс"""
    ia, ib = population[a], population[b]
    if ia.rank != ib.rank:
        return a if ia.rank < ib.rank else b
    if ia.diversity != ib.diversity:
        return a if ia.diversity > ib.diversity else b
    return min(a, b)


def _survivors(merged: List[Individual], size: int) -> List[Individual]:
    """Заполнение следующей популяции по фронтам с DCD-сокращением разрезаемого фронта"""
    objs = np.array([ind.objectives for ind in merged])
    chosen: List[int] = []
    for front in fast_non_dominated_sort(objs):
        room = size - len(chosen)
        if room <= 0:
            break
        if len(front) <= room:
            chosen.extend(front)
        elif room == 1:
            cd = crowding_distance(objs[front])
            chosen.append(front[int(np.argmax(cd))])
        else:
            chosen.extend(front[i] for i in dcd_trim(objs[front], room))
    return [Individual(genotype=merged[i].genotype, objectives=merged[i].objectives) for i in chosen]


def _offspring(
    population: List[Individual], problem: Problem, params: GAParams, rng: np.random.Generator,
) -> List[np.ndarray]:
    n = len(population)
    lower, upper = problem.lower, problem.upper
    pm = params.mutation_probability_per_gene
    if pm is None:
        pm = 1.0 / max(problem.n_var, 1)

    contests = rng.integers(0, n, size=(n, 2))
    parents = [_better(int(a), int(b), population) for a, b in contests]
    cross = rng.random(n // 2) < params.crossover_probability
    cross_draws = rng.random((n // 2, problem.n_var))
    mutate_mask = rng.random((n, problem.n_var)) < pm
    mutate_draws = rng.random((n, problem.n_var))

    children: List[np.ndarray] = []
    for k in range(n // 2):
        p1 = population[parents[2 * k]].genotype
        p2 = population[parents[2 * k + 1]].genotype
        if cross[k]:
            c1, c2 = sbx_crossover(p1, p2, params.eta_c, cross_draws[k], lower, upper)
        else:
            c1, c2 = p1.copy(), p2.copy()
        children.extend([c1, c2])
    return [
        polynomial_mutation(child, lower, upper, params.eta_m, mutate_draws[i], mutate_mask[i])
        for i, child in enumerate(children)
    ]


# ==================== ОСНОВНОЙ ЦИКЛ ====================

def evolve(problem: Problem, params: GAParams, map_fn: Optional[MapFn] = None) -> EvolutionResult:
    """
    Эволюционный поиск. map_fn - упорядоченный map для оценки (например Pool.map);
    по умолчанию встроенный map. Возвращает архив всех найденных недоминируемых векторов.
    """
    map_fn = map_fn or map
    rng = np.random.default_rng(params.seed)
    lower = np.asarray(problem.lower, dtype=float)
    upper = np.asarray(problem.upper, dtype=float)

    initial = [rng.uniform(lower, upper) for _ in range(params.population_size)]
    population = _evaluate(problem, initial, map_fn)
    evaluations = len(population)
    fronts = _assign_rank_and_diversity(population)

    if params.reference_point is not None:
        reference = np.asarray(params.reference_point, dtype=float)
        if reference.shape != (problem.n_obj,):
            raise OptimizationError(f"опорная точка должна иметь {problem.n_obj} координат")
    else:
        reference = _reference_from(np.array([ind.objectives for ind in population]))

    archive = ParetoArchive()
    archive.update(population)
    history = [_stats(0, len(fronts[0]), archive, reference)]
    logger.info(f"🧬 Старт поиска: популяция {params.population_size}, поколений {params.generations}, "
                f"генов {problem.n_var}, seed={params.seed}")

    for generation in range(1, params.generations + 1):
        genotypes = _offspring(population, problem, params, rng)
        children = _evaluate(problem, genotypes, map_fn)
        evaluations += len(children)
        archive.update(children)

        population = _survivors(population + children, params.population_size)
        fronts = _assign_rank_and_diversity(population)
        history.append(_stats(generation, len(fronts[0]), archive, reference))
        if generation % PROGRESS_EVERY == 0 or generation == params.generations:
            last = history[-1]
            logger.info(f"🔁 Поколение {generation}: архив {len(archive.members)}, HV={last.hypervolume:.6g}")

    logger.info(f"✅ Поиск завершен: {evaluations} оценок, в архиве {len(archive.members)} решений")
    return EvolutionResult(
        archive=archive.sorted(),
        population=population,
        history=history,
        reference_point=reference,
        evaluations=evaluations,
    )


def _stats(generation: int, front0_size: int, archive: ParetoArchive, reference: np.ndarray) -> GenerationStats:
    points = archive.objectives()
    best = tuple(float(v) for v in points.min(axis=0)) if len(points) else ()
    return GenerationStats(
        generation=generation,
        front0_size=front0_size,
        hypervolume=hypervolume(points, reference),
        best=best,
    )

