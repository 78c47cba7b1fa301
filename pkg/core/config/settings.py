"""
Конфигурация запуска: переменные окружения (core/.env) и файл RunConfig (JSON)
"""

import json
import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import ConfigError
from ..moo import GAParams
from ..placement import MAX_ORACLE_BITS, PlacementOptions
from ..solvers import CostParams, PowerFlowSettings, ReliabilityParams

logger = logging.getLogger(__name__)

ENV_PATH = Path(__file__).resolve().parent.parent / '.env'

# Коды выхода CLI
EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_SOLVER = 3


def load_environment():
    """Загрузить core/.env (уже заданные переменные процесса не перезаписываются)"""
    load_dotenv(dotenv_path=ENV_PATH)


def env_log_level() -> str:
    return os.getenv("PLANNER_LOG_LEVEL", "INFO").upper()


def env_output_dir() -> str:
    return os.getenv("PLANNER_OUTPUT_DIR", "results")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} должно быть целым числом, получено {raw!r}")


def env_workers() -> int:
    return _env_int("PLANNER_WORKERS", 1)


def env_max_oracle_bits() -> int:
    return _env_int("PLANNER_MAX_ORACLE_BITS", MAX_ORACLE_BITS)


class RunConfig(BaseModel):
    """Файл конфигурации запуска"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    feeder_file: Path
    output_dir: Optional[Path] = None  # None - PLANNER_OUTPUT_DIR
    cost: CostParams = Field(default_factory=CostParams)
    reliability: ReliabilityParams = Field(default_factory=ReliabilityParams)
    powerflow: PowerFlowSettings = Field(default_factory=PowerFlowSettings)
    ga: GAParams = Field(default_factory=GAParams)
    placement: PlacementOptions = Field(default_factory=PlacementOptions)

    def with_overrides(
        self, seed: Optional[int] = None, output: Optional[str] = None,
    ) -> "RunConfig":
        """Копия с переопределениями из командной строки"""
        update = {}
        if seed is not None:
            update["ga"] = self.ga.model_copy(update={"seed": seed})
        if output is not None:
            update["output_dir"] = Path(output)
        return self.model_copy(update=update) if update else self

    @property
    def resolved_output_dir(self) -> Path:
        return self.output_dir if self.output_dir is not None else Path(env_output_dir())


def _format_errors(e: ValidationError):
    return [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]


def parse_run_config(data: dict, base_dir: Optional[Path] = None) -> RunConfig:
    """RunConfig из словаря; относительный feeder_file отсчитывается от base_dir"""
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        problems = _format_errors(e)
        raise ConfigError("ошибка конфигурации:\n" + "\n".join(f"  - {p}" for p in problems))
    if base_dir is not None and not config.feeder_file.is_absolute():
        config = config.model_copy(update={"feeder_file": base_dir / config.feeder_file})
    if not config.feeder_file.exists():
        raise ConfigError(f"файл фидера не найден: {config.feeder_file}")
    return config


def load_run_config(path: str) -> RunConfig:
    """Прочитать и проверить файл конфигурации"""
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"файл конфигурации не найден: {path}")
    try:
        data = json.loads(config_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: ошибка разбора JSON: {e.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: ожидается JSON-объект")
    config = parse_run_config(data, config_path.resolve().parent)
    logger.info(f"⚙️ Конфигурация: {path} (фидер {config.feeder_file})")
    return config
