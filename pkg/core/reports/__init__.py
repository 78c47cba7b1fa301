"""
Reports package: CSV, текстовые сводки, SVG
"""

from .tables import (
    ENS_COLUMNS, LOSS_COLUMNS, MC_COLUMNS, PARETO_COLUMNS, STATS_COLUMNS, VOLTAGE_COLUMNS, fmt, write_csv,
    write_ens, write_ens_monte_carlo, write_losses, write_pareto, write_stats, write_voltages,
)
from .summaries import comparison_text, compromise_text, oracle_text, validation_text, write_text
from .svg import front_figure, write_front_svg

__all__ = [
    'ENS_COLUMNS', 'LOSS_COLUMNS', 'MC_COLUMNS', 'PARETO_COLUMNS', 'STATS_COLUMNS', 'VOLTAGE_COLUMNS', 'fmt',
    'write_csv', 'write_ens', 'write_ens_monte_carlo', 'write_losses', 'write_pareto', 'write_stats',
    'write_voltages',
    'comparison_text', 'compromise_text', 'oracle_text', 'validation_text', 'write_text',
    'front_figure', 'write_front_svg',
]
