"""
Solvers package: потокораспределение, надежность, стоимость
"""

from .power_flow import (
    PowerFlowSettings, PowerFlowState, branch_losses, energy_balance, mean_loads, solve_power_flow,
)
from .reliability import (
    EnsObjective, FailureMode, ImpactClass, LoadPointBreakdown, LoadPointReliability, ReliabilityParams,
    ZoneMap, classify_impact, ens_objective, failure_modes, interruption_cost_rate, iter_reliability,
    load_point_reliability,
)
from .monte_carlo import MonteCarloEstimate, expected_ens_over_loads, monte_carlo_ens, sample_load
from .cost import (
    CostBreakdown, CostParams, cumulative_present_worth, placement_cost, present_worth_factor,
)

__all__ = [
    'PowerFlowSettings', 'PowerFlowState', 'branch_losses', 'energy_balance', 'mean_loads', 'solve_power_flow',
    'EnsObjective', 'FailureMode', 'ImpactClass', 'LoadPointBreakdown', 'LoadPointReliability',
    'ReliabilityParams', 'ZoneMap', 'classify_impact', 'ens_objective', 'failure_modes',
    'interruption_cost_rate', 'iter_reliability', 'load_point_reliability',
    'MonteCarloEstimate', 'expected_ens_over_loads', 'monte_carlo_ens', 'sample_load',
    'CostBreakdown', 'CostParams', 'cumulative_present_worth', 'placement_cost', 'present_worth_factor',
]
