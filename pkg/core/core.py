"""
Главный модуль Feeder Switch Planner
Загрузка окружения, настройка логирования и разбор подкоманд
"""

import argparse
import logging
import sys
from typing import List, Optional

from .config import EXIT_CONFIG, env_log_level, load_environment

# Загружаем переменные окружения из core/.env
load_environment()

# Настройка логирования
logging.basicConfig(
    level=env_log_level(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Импортируем handlers после настройки логирования
from .handlers import analysis, solve  # noqa: E402


def _add_config(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--config", required=required, help="файл конфигурации запуска (JSON)")
    parser.add_argument("--output", help="каталог результатов (переопределяет output_dir)")


def _add_plan(parser: argparse.ArgumentParser):
    parser.add_argument("--switches", help="решения по выключателям, строка 0/1 в порядке кандидатов")
    parser.add_argument("--maneuvers", help="решения по пунктам маневра, строка 0/1 в порядке кандидатов")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planner",
        description="Размещение телеуправляемых выключателей и пунктов маневра на радиальных фидерах",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("solve", help="фронт Парето эволюционным поиском")
    _add_config(p)
    p.add_argument("--seed", type=int, help="зерно генератора (переопределяет ga.seed)")
    p.add_argument("--workers", type=int, help="число процессов для оценки планов")
    p.add_argument("--oracle", action="store_true", help="дополнительно точный фронт перебором")
    p.add_argument("--baseline-switches", dest="baseline_switches", help="существующий план: выключатели 0/1")
    p.add_argument("--baseline-maneuvers", dest="baseline_maneuvers", help="существующий план: пункты маневра 0/1")
    p.set_defaults(handler=solve.cmd_solve)

    p = commands.add_parser("oracle", help="точный фронт Парето полным перебором")
    _add_config(p)
    p.add_argument("--workers", type=int, help="число процессов")
    p.set_defaults(handler=solve.cmd_oracle)

    p = commands.add_parser("powerflow", help="потокораспределение нормального режима")
    _add_config(p)
    _add_plan(p)
    p.set_defaults(handler=analysis.cmd_powerflow)

    p = commands.add_parser("reliability", help="ENS по точкам нагрузки для плана")
    _add_config(p)
    _add_plan(p)
    p.add_argument("--seed", type=int, help="зерно Монте-Карло (переопределяет ga.seed)")
    p.add_argument("--mc-years", dest="mc_years", type=int, help="проверка Монте-Карло на N годах")
    p.set_defaults(handler=analysis.cmd_reliability)

    p = commands.add_parser("validate", help="проверка файла фидера")
    _add_config(p, required=False)
    p.add_argument("--feeder", help="файл фидера (вместо --config)")
    p.add_argument("--write-normalized", dest="write_normalized", help="записать нормализованный файл фидера")
    p.set_defaults(handler=analysis.cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse завершает работу с кодом 2; ошибки использования - код 1
        return EXIT_CONFIG if e.code else 0
    return args.handler(args)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа (вызывается из planner.py)
    """
    try:
        return main(argv)
    except KeyboardInterrupt:
        logger.info("⚠️ Остановлено пользователем (Ctrl+C)")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(run())
