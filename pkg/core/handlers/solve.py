"""
Подкоманды solve и oracle: поиск фронта Парето и полный перебор
"""

import logging
from typing import Optional

from ..config import EXIT_OK, RunConfig, env_max_oracle_bits
from ..network import Network, load_network
from ..placement import (
    EvaluatedPlan, PlacementProblem, SwitchPlan, enumerate_plans, exhaustive_pareto, optimize_placement,
    pareto_subset, select_compromise,
)
from ..reports import (
    comparison_text, compromise_text, oracle_text, write_ens, write_front_svg, write_pareto, write_stats,
    write_text,
)
from .common import config_from_args, handle_errors, staged_output, workers_from_args

logger = logging.getLogger(__name__)


def _compromise_of(front) -> EvaluatedPlan:
    feasible = [e for e in front if not e.penalized]
    return select_compromise(feasible or front)


def _baseline(
    net: Network, config: RunConfig, switches: Optional[str], maneuvers: Optional[str],
) -> Optional[EvaluatedPlan]:
    if switches is None and maneuvers is None:
        return None
    plan = SwitchPlan.from_bits(
        net,
        switches if switches is not None else "0" * len(net.switch_sites),
        maneuvers if maneuvers is not None else "0" * len(net.maneuver_sites),
    )
    problem = PlacementProblem(net, config.cost, config.reliability, config.powerflow, config.placement)
    return problem.evaluate_plan(plan)


@handle_errors
def run_solve(
    config: RunConfig,
    oracle: bool = False,
    workers: int = 1,
    baseline_switches: Optional[str] = None,
    baseline_maneuvers: Optional[str] = None,
) -> int:
    """
    Поиск фронта Парето. Пишет pareto.csv, stats.csv, ens.csv (компромисс),
    compromise.txt и pareto.svg; с oracle - true_front.csv и oracle_comparison.txt,
    с базовым планом - comparison.txt.
    """
    net = load_network(str(config.feeder_file))
    logger.info(f"🚀 solve: {net.name}, кандидатов {len(net.switch_sites)}+{len(net.maneuver_sites)}, "
                f"seed={config.ga.seed}")
    baseline = _baseline(net, config, baseline_switches, baseline_maneuvers)

    with staged_output(config.resolved_output_dir) as stage:
        result = optimize_placement(
            net, config.cost, config.reliability, config.powerflow, config.ga, config.placement, workers,
        )
        compromise = _compromise_of(result.front)

        true_front = None
        if oracle:
            max_bits = env_max_oracle_bits()
            n_bits = len(net.switch_sites) + len(net.maneuver_sites)
            if n_bits > max_bits:
                logger.warning(f"⚠️ Перебор пропущен: {n_bits} кандидатов > {max_bits}")
            else:
                true_front = exhaustive_pareto(
                    net, config.cost, config.reliability, config.powerflow, max_bits, config.placement, workers,
                )
                write_pareto(stage / "true_front.csv", true_front)
                write_text(stage / "oracle_comparison.txt", oracle_text(result.front, true_front))

        write_pareto(stage / "pareto.csv", result.front)
        write_stats(stage / "stats.csv", result.evolution.history)
        if compromise.reliability is not None:
            write_ens(stage / "ens.csv", compromise.reliability)
        write_text(stage / "compromise.txt", compromise_text(compromise, len(result.front), config.ga.seed))
        write_front_svg(stage / "pareto.svg", result.front, compromise, true_front, title=f"Pareto front: {net.name}")
        if baseline is not None:
            write_text(stage / "comparison.txt", comparison_text(baseline, compromise))

    logger.info(f"✅ Компромисс {compromise.plan}: F1={compromise.f1:.2f}, F2={compromise.f2:.2f}")
    return EXIT_OK


@handle_errors
def run_oracle(config: RunConfig, workers: int = 1) -> int:
    """Точный фронт перебором: true_front.csv, compromise.txt, pareto.svg"""
    net = load_network(str(config.feeder_file))
    problem = PlacementProblem(net, config.cost, config.reliability, config.powerflow, config.placement)
    with staged_output(config.resolved_output_dir) as stage:
        true_front = pareto_subset(enumerate_plans(problem, env_max_oracle_bits(), workers))
        compromise = _compromise_of(true_front)
        write_pareto(stage / "true_front.csv", true_front)
        write_text(stage / "compromise.txt", compromise_text(compromise, len(true_front), config.ga.seed))
        write_front_svg(stage / "pareto.svg", true_front, compromise, title=f"Exhaustive front: {net.name}")
    return EXIT_OK


@handle_errors
def cmd_solve(args) -> int:
    config = config_from_args(args)
    return run_solve(
        config,
        oracle=args.oracle,
        workers=workers_from_args(args),
        baseline_switches=args.baseline_switches,
        baseline_maneuvers=args.baseline_maneuvers,
    )


@handle_errors
def cmd_oracle(args) -> int:
    return run_oracle(config_from_args(args), workers=workers_from_args(args))
