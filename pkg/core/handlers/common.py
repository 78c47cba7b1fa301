"""
Общие части обработчиков подкоманд: коды выхода, промежуточный каталог результатов
"""

import logging
import os
import shutil
import tempfile
from contextlib import contextmanager
from functools import wraps
from pathlib import Path
from typing import Iterator, Optional

from ..config import EXIT_SOLVER, RunConfig, env_workers, load_run_config
from ..errors import ConfigError, PlannerError

logger = logging.getLogger(__name__)


def handle_errors(func):
    """Декоратор: исключения планировщика -> код выхода с диагностикой"""
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except PlannerError as e:
            logger.error(f"❌ {e}")
            return e.exit_code
        except Exception as e:
            logger.exception(f"❌ Непредвиденная ошибка: {e}")
            return EXIT_SOLVER
    return wrapper


@contextmanager
def staged_output(output_dir: Path) -> Iterator[Path]:
    """
    Файлы пишутся во временный подкаталог и переносятся в output_dir только
    при успехе; при ошибке подкаталог удаляется целиком.
    """
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(f"каталог результатов недоступен: {output_dir}: {e}")
    if not os.access(output_dir, os.W_OK):
        raise ConfigError(f"нет прав на запись в {output_dir}")
    stage = Path(tempfile.mkdtemp(prefix=".partial-", dir=output_dir))
    try:
        yield stage
    except BaseException:
        shutil.rmtree(stage, ignore_errors=True)
        raise
    for item in sorted(stage.iterdir()):
        os.replace(item, output_dir / item.name)
    stage.rmdir()
    logger.info(f"📁 Результаты: {output_dir}")


def config_from_args(args) -> RunConfig:
    """RunConfig из --config с переопределениями --seed и --output"""
    if not getattr(args, "config", None):
        raise ConfigError("не указан --config")
    config = load_run_config(args.config)
    return config.with_overrides(seed=getattr(args, "seed", None), output=getattr(args, "output", None))


def workers_from_args(args) -> int:
    workers: Optional[int] = getattr(args, "workers", None)
    workers = env_workers() if workers is None else workers
    if workers < 1:
        raise ConfigError(f"число процессов должно быть >= 1, получено {workers}")
    return workers
