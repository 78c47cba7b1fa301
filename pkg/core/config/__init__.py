"""
Config package: окружение и файл запуска
"""

from .settings import (
    ENV_PATH, EXIT_CONFIG, EXIT_DATA, EXIT_OK, EXIT_SOLVER, RunConfig, env_log_level, env_max_oracle_bits,
    env_output_dir, env_workers, load_environment, load_run_config, parse_run_config,
)

__all__ = [
    'ENV_PATH', 'EXIT_CONFIG', 'EXIT_DATA', 'EXIT_OK', 'EXIT_SOLVER', 'RunConfig', 'env_log_level',
    'env_max_oracle_bits', 'env_output_dir', 'env_workers', 'load_environment', 'load_run_config',
    'parse_run_config',
]
