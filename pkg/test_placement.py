"""
Тесты размещения: кодирование плана, оценка, полный перебор, компромисс, поиск
"""

import numpy as np
import pytest

from core.errors import ConfigError
from core.moo import GAParams, dominates, evolve
from core.placement import (
    PENALTY, EvaluatedPlan, PlacementOptions, PlacementProblem, SwitchPlan, decode, enumerate_plans, evaluate,
    exhaustive_pareto, memberships, normal_state_network, objective_vectors, optimize_placement, pareto_subset,
    recovered_fraction, select_compromise,
)
from core.solvers import CostParams, PowerFlowSettings, ReliabilityParams

COST = CostParams(switch_cost=4700.0, maintenance_fraction=0.02, inflation=0.10, interest=0.12,
                  horizon_years=10, loss_cost_rate=0.05)
REL = ReliabilityParams()
PF = PowerFlowSettings()


def evaluated(f1, f2, net):
    return EvaluatedPlan(plan=SwitchPlan.empty(net), f1=f1, f2=f2, cost=None, reliability=None)


def two_feeders(build_network, transfer_branch=None):
    tie = {"id": "TP", "kind": "maneuver", "between": ["B", "C"], "resistance": 0.01, "reactance": 0.01,
           "build_cost": 8000.0}
    if transfer_branch:
        tie["transfer_branch"] = transfer_branch
    return build_network(
        [("B1", "S", "A", 1.0, {"resistance": 0.01}), ("B2", "A", "B", 1.0, {"resistance": 0.01}),
         ("K1", "T", "C", 1.0, {"resistance": 0.01})],
        load_points=[("LPA", "A", 100.0), ("LPB", "B", 200.0), ("LPC", "C", 50.0)],
        sources=("S", "T"),
        candidates=[{"id": "SW2", "kind": "switch", "on_branch": "B2"}, tie],
    )


# ==================== decode ====================

def test_decode_thresholds(eight_lp):
    assert decode(np.zeros(6), eight_lp) == SwitchPlan.empty(eight_lp)
    assert decode(np.ones(6), eight_lp) == SwitchPlan.full(eight_lp)
    plan = decode([0.5, 0.49, 0.0, 0.0, 0.0, 0.5], eight_lp)
    assert plan.switch_bits == "10000"
    assert plan.maneuver_bits == "1"


def test_decode_rejects_wrong_length(eight_lp):
    with pytest.raises(ConfigError):
        decode(np.zeros(5), eight_lp)


def test_decode_of_encoded_plan_is_identity(ten_candidate):
    rng = np.random.default_rng(0)
    for _ in range(50):
        plan = SwitchPlan.from_index(ten_candidate, int(rng.integers(0, 1024)))
        assert decode(plan.encode(), ten_candidate) == plan


def test_plan_bits_follow_candidate_order(eight_lp):
    plan = SwitchPlan.with_installed(eight_lp, ["SW5", "TP1"])
    assert (plan.switch_bits, plan.maneuver_bits) == ("00001", "1")
    assert SwitchPlan.from_bits(eight_lp, "00001", "1") == plan
    with pytest.raises(ConfigError):
        SwitchPlan.from_bits(eight_lp, "0000x", "1")
    with pytest.raises(ConfigError):
        SwitchPlan.from_bits(eight_lp, "0001", "1")


# ==================== evaluate ====================

def test_empty_plan_costs_only_losses(eight_lp):
    result = evaluate(eight_lp, SwitchPlan.empty(eight_lp), COST, REL, PF)
    assert result.cost.capital == 0.0
    assert result.cost.maintenance_pw == 0.0
    assert result.f1 == pytest.approx(result.cost.loss_pw)
    assert result.f1 > 0.0


def test_full_plan_trades_cost_for_reliability(eight_lp):
    empty = evaluate(eight_lp, SwitchPlan.empty(eight_lp), COST, REL, PF)
    full = evaluate(eight_lp, SwitchPlan.full(eight_lp), COST, REL, PF)
    assert full.cost.capital > empty.cost.capital
    assert full.f1 > empty.f1
    assert full.f2 < empty.f2


def test_never_useful_switch_changes_only_cost(build_network):
    net = build_network(
        [("B1", "S", "A", 1.0), ("B2", "A", "X", 1.0, {"failure_rate_per_km": 0.0})],
        load_points=[("LPA", "A", 100.0)],
        candidates=[{"id": "SW2", "kind": "switch", "on_branch": "B2"}],
    )
    without = evaluate(net, SwitchPlan.empty(net), COST, REL, PF)
    with_switch = evaluate(net, SwitchPlan.full(net), COST, REL, PF)
    factor = sum((1.10 / 1.12) ** t for t in range(1, 11))
    assert with_switch.f2 == without.f2
    assert with_switch.f1 - without.f1 == pytest.approx(4700.0 + 0.02 * 4700.0 * factor, rel=1e-12)


def test_evaluate_is_pure(ten_candidate):
    plan = SwitchPlan.from_index(ten_candidate, 613)
    assert evaluate(ten_candidate, plan, COST, REL, PF) == evaluate(ten_candidate, plan, COST, REL, PF)


def test_unconverged_power_flow_is_penalized(eight_lp):
    result = evaluate(eight_lp, SwitchPlan.empty(eight_lp), COST, REL, PowerFlowSettings(max_iterations=1))
    assert result.penalized
    assert result.objectives == (PENALTY, PENALTY)
    assert result.cost is None and result.reliability is None


def test_objectives_are_finite_and_non_negative(ten_candidate):
    for index in range(0, 1024, 97):
        result = evaluate(ten_candidate, SwitchPlan.from_index(ten_candidate, index), COST, REL, PF)
        assert not result.penalized
        assert 0.0 <= result.f1 < PENALTY and 0.0 <= result.f2 < PENALTY


# ==================== реконфигурация ====================

def test_ties_stay_open_by_default(build_network):
    net = two_feeders(build_network, transfer_branch="B2")
    plan = SwitchPlan.full(net)
    assert normal_state_network(net, plan, PlacementOptions()) is net


def test_closing_tie_with_transfer_branch_moves_load(build_network):
    net = two_feeders(build_network, transfer_branch="B2")
    plan = SwitchPlan.full(net)
    options = PlacementOptions(reconfigure_ties=True)
    reconfigured = normal_state_network(net, plan, options)
    assert "B2" not in reconfigured.branches
    assert reconfigured.feeder_of("B") == "T"

    normal = evaluate(net, plan, COST, REL, PF)
    moved = evaluate(net, plan, COST, REL, PF, options)
    assert not moved.penalized
    assert moved.loss_kw != pytest.approx(normal.loss_kw)
    assert moved.f2 == normal.f2


def test_closing_tie_without_opening_is_penalized(build_network):
    net = two_feeders(build_network)
    options = PlacementOptions(reconfigure_ties=True)
    assert normal_state_network(net, SwitchPlan.full(net), options) is None
    result = evaluate(net, SwitchPlan.full(net), COST, REL, PF, options)
    assert result.penalized
    assert not evaluate(net, SwitchPlan.with_installed(net, ["SW2"]), COST, REL, PF, options).penalized


# ==================== полный перебор ====================

def test_no_candidates_gives_single_empty_plan(two_bus):
    front = exhaustive_pareto(two_bus, COST, REL, PF)
    assert len(front) == 1
    assert front[0].plan == SwitchPlan.empty(two_bus)


def test_one_useful_switch_gives_two_point_front(build_network):
    net = build_network(
        [("B1", "S", "A", 1.0), ("B2", "A", "B", 2.0)],
        load_points=[("LPA", "A", 100.0), ("LPB", "B", 100.0)],
        candidates=[{"id": "SW2", "kind": "switch", "on_branch": "B2"}],
    )
    front = exhaustive_pareto(net, COST, REL, PF)
    assert [e.plan.switch_bits for e in front] == ["0", "1"]
    assert front[0].f1 < front[1].f1 and front[0].f2 > front[1].f2


def test_too_many_bits_is_a_config_error(ten_candidate):
    with pytest.raises(ConfigError):
        exhaustive_pareto(ten_candidate, COST, REL, PF, max_bits=9)


def test_enumeration_order_and_count(eight_lp):
    problem = PlacementProblem(eight_lp, COST, REL, PF)
    plans = enumerate_plans(problem)
    assert len(plans) == 64
    assert [e.plan for e in plans[:3]] == [SwitchPlan.from_index(eight_lp, i) for i in range(3)]
    assert problem.cache_size == 64


def test_pareto_subset_is_sorted_and_non_dominated(eight_lp):
    front = exhaustive_pareto(eight_lp, COST, REL, PF)
    objs = [e.objectives for e in front]
    assert objs == sorted(objs)
    for a in objs:
        assert not any(dominates(b, a) for b in objs)


def test_parallel_enumeration_matches_serial(eight_lp):
    serial = exhaustive_pareto(eight_lp, COST, REL, PF, workers=1)
    parallel = exhaustive_pareto(eight_lp, COST, REL, PF, workers=2)
    assert [e.objectives for e in serial] == [e.objectives for e in parallel]
    assert [e.plan for e in serial] == [e.plan for e in parallel]


def test_recovered_fraction(two_bus):
    truth = [evaluated(1.0, 3.0, two_bus), evaluated(2.0, 2.0, two_bus), evaluated(2.0, 2.0, two_bus)]
    assert len(objective_vectors(truth)) == 2
    assert recovered_fraction([evaluated(2.0, 2.0, two_bus)], truth) == 0.5
    assert recovered_fraction([], []) == 1.0


# ==================== компромисс ====================

def test_compromise_prefers_balanced_member(two_bus):
    front = [evaluated(0.0, 1.0, two_bus), evaluated(1.0, 0.0, two_bus), evaluated(0.4, 0.4, two_bus)]
    assert select_compromise(front) is front[2]
    assert memberships([e.objectives for e in front]).min(axis=1)[2] == pytest.approx(0.6)


def test_compromise_of_single_member(two_bus):
    only = evaluated(5.0, 7.0, two_bus)
    assert select_compromise([only]) is only


def test_compromise_tie_takes_first(two_bus):
    front = [evaluated(1.0, 1.0, two_bus), evaluated(1.0, 1.0, two_bus)]
    assert select_compromise(front) is front[0]


def test_compromise_tie_prefers_lower_cost(two_bus):
    front = [evaluated(1.0, 0.0, two_bus), evaluated(0.0, 1.0, two_bus)]
    assert select_compromise(front) is front[1]


def test_compromise_of_empty_front_raises():
    with pytest.raises(ValueError):
        select_compromise([])


# ==================== эволюционный поиск ====================

def test_search_is_independent_of_worker_count(eight_lp):
    ga = GAParams(population_size=12, generations=6, seed=5)
    single = optimize_placement(eight_lp, COST, REL, PF, ga, workers=1)
    multi = optimize_placement(eight_lp, COST, REL, PF, ga, workers=2)
    assert [e.objectives for e in single.front] == [e.objectives for e in multi.front]
    assert single.evolution.history == multi.evolution.history


@pytest.mark.parametrize("name, generations", [("four_bus", 20), ("eight_lp", 60), ("ten_candidate", 100)])
def test_compromise_beats_both_extremes(feeders, name, generations):
    net = feeders[name]
    result = optimize_placement(net, COST, REL, PF, GAParams(population_size=30, generations=generations, seed=42))
    chosen = select_compromise(result.front)
    full = evaluate(net, SwitchPlan.full(net), COST, REL, PF)
    empty = evaluate(net, SwitchPlan.empty(net), COST, REL, PF)
    assert chosen.f1 < full.f1
    assert chosen.f2 < empty.f2


def test_search_front_never_beyond_true_front(eight_lp):
    truth = exhaustive_pareto(eight_lp, COST, REL, PF)
    result = optimize_placement(eight_lp, COST, REL, PF, GAParams(population_size=20, generations=20, seed=8))
    true_objs = [t.objectives for t in truth]
    for found in result.front:
        assert not any(dominates(found.objectives, t) for t in true_objs)
        assert found.objectives in true_objs or any(dominates(t, found.objectives) for t in true_objs)


@pytest.mark.slow
def test_search_recovers_exhaustive_front(ten_candidate):
    problem = PlacementProblem(ten_candidate, COST, REL, PF)
    truth = pareto_subset(enumerate_plans(problem))
    successes = 0
    for seed in range(10):
        evolution = evolve(problem, GAParams(population_size=30, generations=100, seed=seed))
        found = [problem.evaluate_plan(decode(ind.genotype, ten_candidate)) for ind in evolution.archive]
        if recovered_fraction(found, truth) >= 0.9:
            successes += 1
    assert successes >= 8
