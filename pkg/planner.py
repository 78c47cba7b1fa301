"""
⚡ Feeder Switch Planner - размещение телеуправляемых выключателей и пунктов маневра

Entry Point
Запуск: python planner.py <подкоманда> --config data/config.json

Структура проекта:
- planner.py - точка входа (этот файл)
- core/ - основной код
  ├── core.py - окружение, логирование, подкоманды
  ├── .env - переменные окружения (см. .env.example)
  ├── errors.py - исключения и коды выхода
  ├── config/ - файл запуска RunConfig
  ├── network/ - модель сети
  │   ├── models.py - записи файла фидера (pydantic)
  │   ├── topology.py - дерево фидеров, запросы, проверка
  │   └── loader.py - чтение и запись файла фидера
  ├── solvers/ - расчеты
  │   ├── power_flow.py - обратный-прямой ход
  │   ├── reliability.py - FMEA, ENS, F2
  │   ├── monte_carlo.py - моделирование Монте-Карло
  │   └── cost.py - F1 с приведением
  ├── moo/ - модифицированный NSGA-II
  ├── placement/ - план, оценка, перебор, компромисс
  ├── reports/ - CSV, текст, SVG
  └── handlers/ - подкоманды solve, oracle, powerflow, reliability, validate
- data/ - фидеры и пример конфигурации
- docs/FORMATS.md - форматы файлов

Подкоманды:
✅ solve - фронт Парето, компромиссное решение, статистика поколений
✅ oracle - точный фронт перебором (до PLANNER_MAX_ORACLE_BITS кандидатов)
✅ powerflow - напряжения узлов и потери ветвей
✅ reliability - ENS по точкам нагрузки (+ проверка Монте-Карло)
✅ validate - проверка и нормализация файла фидера

Коды выхода: 0 - успех, 1 - конфигурация, 2 - данные сети, 3 - ошибка расчета
"""

import sys

from core.core import run

if __name__ == "__main__":
    sys.exit(run())
