"""
Подкоманды powerflow, reliability и validate
"""

import logging
from pathlib import Path
from typing import Optional

from ..config import EXIT_OK, RunConfig
from ..errors import NetworkDataError, SolverError
from ..network import Network, dump_network, load_network
from ..placement import SwitchPlan, normal_state_network
from ..reports import validation_text, write_ens, write_ens_monte_carlo, write_losses, write_voltages
from ..solvers import branch_losses, ens_objective, monte_carlo_ens, solve_power_flow
from .common import config_from_args, handle_errors, staged_output

logger = logging.getLogger(__name__)


def plan_from_bits(net: Network, switches: Optional[str], maneuvers: Optional[str]) -> SwitchPlan:
    """План из строк 0/1; пропущенная строка - ничего не установлено"""
    return SwitchPlan.from_bits(
        net,
        switches if switches is not None else "0" * len(net.switch_sites),
        maneuvers if maneuvers is not None else "0" * len(net.maneuver_sites),
    )


@handle_errors
def run_powerflow(config: RunConfig, switches: Optional[str] = None, maneuvers: Optional[str] = None) -> int:
    """Потокораспределение нормального режима: voltages.csv, losses.csv"""
    net = load_network(str(config.feeder_file))
    plan = plan_from_bits(net, switches, maneuvers)
    state_net = normal_state_network(net, plan, config.placement)
    if state_net is None:
        raise NetworkDataError(f"замыкание пунктов маневра {plan.maneuver_bits} нарушает радиальность")
    state = solve_power_flow(state_net, settings=config.powerflow)
    if not state.converged:
        raise SolverError(f"потокораспределение не сошлось за {config.powerflow.max_iterations} итераций")
    losses = branch_losses(state, state_net)
    with staged_output(config.resolved_output_dir) as stage:
        write_voltages(stage / "voltages.csv", state_net, state, config.powerflow)
        write_losses(stage / "losses.csv", state_net, state, losses)
    violations = state.voltage_violations(config.powerflow)
    logger.info(f"⚡ Итераций {state.iterations}, потери {state.total_loss_active:.4f} кВт, "
                f"расхождение напряжения источника {state.source_mismatch:.2e} о.е., "
                f"узлов вне допуска {len(violations)}")
    return EXIT_OK


@handle_errors
def run_reliability(
    config: RunConfig,
    switches: Optional[str] = None,
    maneuvers: Optional[str] = None,
    mc_years: Optional[int] = None,
) -> int:
    """ENS по точкам нагрузки для плана: ens.csv; с mc_years - ens_mc.csv"""
    net = load_network(str(config.feeder_file))
    plan = plan_from_bits(net, switches, maneuvers)
    objective = ens_objective(net, plan, config.reliability)
    estimates = None
    if mc_years is not None:
        if mc_years < 1:
            raise SolverError(f"число лет моделирования должно быть >= 1, получено {mc_years}")
        estimates = monte_carlo_ens(net, plan, config.reliability, mc_years, config.ga.seed)
    with staged_output(config.resolved_output_dir) as stage:
        write_ens(stage / "ens.csv", objective)
        if estimates is not None:
            write_ens_monte_carlo(stage / "ens_mc.csv", estimates, objective)
    logger.info(f"🛡 План {plan}: F2={objective.f2:.4f}, ENS={objective.total_ens_kwh:.4f} кВт*ч/год")
    return EXIT_OK


@handle_errors
def run_validate(feeder_file: str, write_normalized: Optional[str] = None) -> int:
    """Проверка файла фидера; нарушения выводятся списком (код выхода 2)"""
    try:
        net = load_network(feeder_file)
    except NetworkDataError as e:
        print(validation_text(feeder_file, e.violations or [e.message]), end="")
        raise
    print(validation_text(feeder_file, None), end="")
    if write_normalized:
        Path(write_normalized).parent.mkdir(parents=True, exist_ok=True)
        dump_network(net, write_normalized)
    return EXIT_OK


@handle_errors
def cmd_powerflow(args) -> int:
    return run_powerflow(config_from_args(args), args.switches, args.maneuvers)


@handle_errors
def cmd_reliability(args) -> int:
    return run_reliability(config_from_args(args), args.switches, args.maneuvers, args.mc_years)


@handle_errors
def cmd_validate(args) -> int:
    feeder = args.feeder
    if feeder is None:
        feeder = str(config_from_args(args).feeder_file)
    return run_validate(feeder, args.write_normalized)
