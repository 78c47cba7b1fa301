"""
Тесты модифицированного NSGA-II: операторы, сортировка, CD/DCD, эволюционный цикл
"""

import itertools
import math

import numpy as np
import pytest

from core.errors import OptimizationError
from core.moo import (
    GAParams, Individual, ParetoArchive, crowding_distance, dcd_trim, dcd_value, dominates,
    dynamic_crowding_distance, evolve, fast_non_dominated_sort, gap_variance, hypervolume, mutation_delta,
    polynomial_mutation, sbx_beta, sbx_crossover,
)
from core.moo.benchmarks import ConvexFront, SingleOptimum, front_distance

TRIALS = 100_000


def pairwise_fronts(objs):
    """Фронты последовательным отбором недоминируемых точек (O(N^2) на фронт)"""
    remaining = list(range(len(objs)))
    fronts = []
    while remaining:
        front = [
            i for i in remaining
            if not any(np.all(objs[j] <= objs[i]) and np.any(objs[j] < objs[i]) for j in remaining if j != i)
        ]
        fronts.append(sorted(front))
        remaining = [i for i in remaining if i not in front]
    return fronts


# ==================== SBX ====================

def test_sbx_beta_known_value():
    assert float(sbx_beta(0.8, 2.0)) == pytest.approx(2.5 ** (1 / 3), abs=1e-12)


def test_sbx_known_children():
    c1, c2 = sbx_crossover(np.array([0.0]), np.array([1.0]), 2.0, np.array([0.8]), clip=False)
    assert c1[0] == pytest.approx(-0.17860, abs=1e-5)
    assert c2[0] == pytest.approx(1.17860, abs=1e-5)
    c1, c2 = sbx_crossover(np.array([0.0]), np.array([1.0]), 2.0, np.array([0.8]), np.zeros(1), np.ones(1))
    assert (c1[0], c2[0]) == (0.0, 1.0)


def test_sbx_half_draw_copies_parents():
    rng = np.random.default_rng(0)
    p1, p2 = rng.random(TRIALS), rng.random(TRIALS)
    c1, c2 = sbx_crossover(p1, p2, 20.0, np.full(TRIALS, 0.5))
    assert np.array_equal(c1, p1)
    assert np.array_equal(c2, p2)


def test_sbx_preserves_midpoint_and_bounds():
    rng = np.random.default_rng(1)
    p1, p2, u = rng.random(TRIALS), rng.random(TRIALS), rng.random(TRIALS)
    c1, c2 = sbx_crossover(p1, p2, 20.0, u, clip=False)
    assert np.max(np.abs((c1 + c2) / 2 - (p1 + p2) / 2)) < 1e-12

    c1, c2 = sbx_crossover(p1, p2, 20.0, u, np.zeros(TRIALS), np.ones(TRIALS))
    assert np.all((c1 >= 0) & (c1 <= 1) & (c2 >= 0) & (c2 <= 1))


def test_sbx_rejects_parents_of_different_length():
    with pytest.raises(ValueError):
        sbx_crossover(np.zeros(2), np.zeros(3), 20.0, np.full(2, 0.3))


# ==================== полиномиальная мутация ====================

def test_mutation_delta_known_value():
    assert float(mutation_delta(0.9, 20.0)) == pytest.approx(1 - 0.2 ** (1 / 21), abs=1e-12)
    assert float(mutation_delta(0.9, 20.0)) == pytest.approx(0.07377, abs=1e-5)


def test_mutation_delta_is_continuous_at_half():
    assert float(mutation_delta(0.5, 20.0)) == 0.0
    below = float(mutation_delta(0.5 - 1e-9, 20.0))
    assert abs(below) < 1e-9


def test_mutation_step_scales_with_bound_width():
    step = 1 - 0.2 ** (1 / 21)
    y = polynomial_mutation(np.array([0.5, 0.5]), 0.0, 1.0, 20.0, np.array([0.9, 0.1]))
    assert y[0] == pytest.approx(0.5 + step, abs=1e-6)
    assert y[0] == pytest.approx(0.57378, abs=1e-5)
    assert y[1] == pytest.approx(0.5 - step, abs=1e-6)
    wide = polynomial_mutation(np.array([0.0]), -10.0, 10.0, 20.0, np.array([0.9]))
    assert wide[0] == pytest.approx(20.0 * step, abs=1e-5)


def test_mutation_at_bound_does_not_leave_it():
    y = polynomial_mutation(np.array([0.0, 1.0]), 0.0, 1.0, 20.0, np.array([0.2, 0.8]))
    assert y == pytest.approx([0.0, 1.0], abs=1e-12)


def test_mutation_half_draw_is_fixed_point():
    rng = np.random.default_rng(2)
    x = rng.random(TRIALS)
    assert np.array_equal(polynomial_mutation(x, 0.0, 1.0, 20.0, np.full(TRIALS, 0.5)), x)


def test_mutation_stays_in_bounds():
    rng = np.random.default_rng(3)
    x, r = rng.random(TRIALS), rng.random(TRIALS)
    y = polynomial_mutation(x, 0.0, 1.0, 20.0, r)
    assert np.all((y >= 0.0) & (y <= 1.0))
    y = polynomial_mutation(x * 4 - 2, -2.0, 2.0, 1.0, r)
    assert np.all((y >= -2.0) & (y <= 2.0))


def test_mutation_mask_leaves_other_genes():
    x = np.array([0.2, 0.4, 0.6])
    y = polynomial_mutation(x, 0.0, 1.0, 20.0, np.full(3, 0.99), mask=np.array([True, False, False]))
    assert y[0] > 0.2
    assert np.array_equal(y[1:], x[1:])


# ==================== доминирование и сортировка ====================

def test_single_individual_is_one_front():
    assert fast_non_dominated_sort([[3.0, 4.0]]) == [[0]]


def test_strict_domination_gives_two_fronts():
    assert fast_non_dominated_sort([[2.0, 2.0], [1.0, 1.0]]) == [[1], [0]]


def test_empty_population_has_no_fronts():
    assert fast_non_dominated_sort(np.zeros((0, 2))) == []


def test_sort_matches_pairwise_oracle():
    rng = np.random.default_rng(4)
    for trial in range(500):
        size = int(rng.integers(1, 201))
        # Целые значения дают совпадения и равенства по одной цели
        objs = rng.integers(0, 12, size=(size, 2)).astype(float) if trial % 2 else rng.random((size, 2))
        assert fast_non_dominated_sort(objs) == pairwise_fronts(objs)


def test_domination_is_strict_partial_order():
    rng = np.random.default_rng(5)
    points = rng.integers(0, 4, size=(25, 2)).astype(float)
    for a in points:
        assert not dominates(a, a)
    for a, b in itertools.permutations(points, 2):
        assert not (dominates(a, b) and dominates(b, a))
    for a, b, c in itertools.permutations(points, 3):
        if dominates(a, b) and dominates(b, c):
            assert dominates(a, c)


def test_front_zero_is_mutually_non_dominated():
    objs = np.random.default_rng(6).random((100, 2))
    front = fast_non_dominated_sort(objs)[0]
    for i, j in itertools.permutations(front, 2):
        assert not dominates(objs[i], objs[j])


# ==================== CD и DCD ====================

def test_small_fronts_are_all_boundaries():
    assert np.all(np.isinf(crowding_distance([[0.0, 1.0]])))
    assert np.all(np.isinf(crowding_distance([[0.0, 1.0], [1.0, 0.0]])))


def test_three_point_crowding_distance():
    cd = crowding_distance([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    assert math.isinf(cd[0]) and math.isinf(cd[2])
    assert cd[1] == pytest.approx(1.0)


def test_coinciding_neighbors_give_zero_distance():
    cd = crowding_distance([[0.0, 1.0], [0.5, 0.5], [0.5, 0.5], [0.5, 0.5], [1.0, 0.0]])
    assert cd[2] == 0.0


def test_dcd_value_with_natural_log():
    assert float(dcd_value(1.0, 0.1)) == pytest.approx(1 / math.log(10), abs=1e-12)
    assert float(dcd_value(1.0, 0.1)) == pytest.approx(0.43429, abs=1e-5)


def test_dcd_is_finite_for_degenerate_variance():
    assert math.isfinite(float(dcd_value(0.5, 0.0)))
    assert math.isfinite(float(dcd_value(0.5, 1.0)))
    assert float(dcd_value(0.5, 0.0)) > 0


def test_gap_variance_of_even_spacing_is_zero():
    points = [[i / 4, 1 - i / 4] for i in range(5)]
    variance = gap_variance(points)
    assert np.all(np.isinf(variance[[0, 4]]))
    assert np.allclose(variance[1:4], 0.0)
    assert np.all(np.isfinite(dynamic_crowding_distance(points)[1:4]))


def test_trim_keeps_endpoints_of_collinear_front():
    points = [[i / 9, 1 - i / 9] for i in range(10)]
    kept = dcd_trim(points, 5)
    assert len(kept) == 5
    assert 0 in kept and 9 in kept


def test_trim_to_current_size_is_identity():
    points = np.random.default_rng(7).random((6, 2))
    assert dcd_trim(points, 6) == list(range(6))


def test_trim_removes_most_crowded_point():
    points = [[0.0, 1.0], [0.30, 0.70], [0.31, 0.69], [0.7, 0.3], [1.0, 0.0]]
    kept = dcd_trim(points, 4)
    assert 0 in kept and 4 in kept and 3 in kept
    assert len({1, 2} & set(kept)) == 1


def test_trim_below_two_is_rejected():
    with pytest.raises(ValueError):
        dcd_trim([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]], 1)


# ==================== архив и гиперобъем ====================

def individual(*objectives):
    return Individual(genotype=np.zeros(1), objectives=np.array(objectives, dtype=float))


def test_archive_keeps_only_non_dominated_vectors():
    archive = ParetoArchive()
    assert archive.add(individual(1.0, 3.0))
    assert archive.add(individual(3.0, 1.0))
    assert not archive.add(individual(2.0, 4.0))
    assert not archive.add(individual(1.0, 3.0))
    assert archive.add(individual(0.5, 0.5))
    assert archive.objectives().tolist() == [[0.5, 0.5]]


def test_hypervolume_of_simple_sets():
    ref = np.array([1.0, 1.0])
    assert hypervolume(np.array([[0.5, 0.5]]), ref) == pytest.approx(0.25)
    assert hypervolume(np.array([[0.0, 0.5], [0.5, 0.0]]), ref) == pytest.approx(0.75)
    assert hypervolume(np.array([[1.0, 0.2], [2.0, 2.0]]), ref) == 0.0
    assert hypervolume(np.zeros((0, 2)), ref) == 0.0


# ==================== эволюционный цикл ====================

def test_single_optimum_collapses_front():
    result = evolve(SingleOptimum(), GAParams(population_size=30, generations=30, seed=1))
    assert [ind.objectives.tolist() for ind in result.front] == [[0.0, 0.0]]


def test_convex_front_is_approached():
    problem = ConvexFront()
    result = evolve(problem, GAParams(population_size=30, generations=100, seed=42))
    points = np.array([ind.objectives for ind in result.front])
    assert front_distance(points, ConvexFront.pareto_curve) < 0.05
    for ind in result.front:
        assert np.all((ind.genotype >= problem.lower) & (ind.genotype <= problem.upper))


def test_same_seed_gives_identical_archive():
    params = GAParams(population_size=20, generations=25, seed=123)
    first = evolve(ConvexFront(n_var=3), params)
    second = evolve(ConvexFront(n_var=3), params)
    assert len(first.front) == len(second.front)
    for a, b in zip(first.front, second.front):
        assert np.array_equal(a.genotype, b.genotype)
        assert np.array_equal(a.objectives, b.objectives)
    assert first.history == second.history


def test_evaluation_order_does_not_change_result():
    def reversed_map(fn, items):
        items = list(items)
        results = [fn(x) for x in reversed(items)]
        return list(reversed(results))

    params = GAParams(population_size=16, generations=15, seed=9)
    plain = evolve(ConvexFront(), params)
    shuffled = evolve(ConvexFront(), params, map_fn=reversed_map)
    assert [i.objectives.tolist() for i in plain.front] == [i.objectives.tolist() for i in shuffled.front]


def test_hypervolume_never_decreases():
    result = evolve(ConvexFront(n_var=4), GAParams(population_size=20, generations=40, seed=3))
    volumes = [s.hypervolume for s in result.history]
    assert len(volumes) == 41
    assert all(b >= a - 1e-12 for a, b in zip(volumes, volumes[1:]))
    bests = np.array([s.best for s in result.history])
    assert np.all(np.diff(bests, axis=0) <= 0)


def test_archive_members_are_mutually_non_dominated():
    result = evolve(ConvexFront(n_var=3), GAParams(population_size=20, generations=20, seed=4))
    for a, b in itertools.permutations(result.front, 2):
        assert not dominates(a.objectives, b.objectives)
    assert result.evaluations == 20 * 21


def test_population_size_must_be_even_and_large_enough():
    with pytest.raises(ValueError):
        GAParams(population_size=31)
    with pytest.raises(ValueError):
        GAParams(population_size=2)


def test_non_finite_objectives_are_rejected():
    class Broken(ConvexFront):
        def evaluate(self, genotype):
            return float("nan"), 1.0

    with pytest.raises(OptimizationError):
        evolve(Broken(), GAParams(population_size=4, generations=1))


def test_reference_point_shape_is_checked():
    with pytest.raises(OptimizationError):
        evolve(ConvexFront(), GAParams(population_size=4, generations=1, reference_point=[1.0, 1.0, 1.0]))
