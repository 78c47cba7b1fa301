"""
Исключения планировщика и их коды выхода CLI
"""

from typing import List, Optional


class PlannerError(Exception):
    """Базовая ошибка планировщика"""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(PlannerError):
    """Ошибка конфигурации или аргументов командной строки"""

    exit_code = 1


class NetworkDataError(PlannerError):
    """Ошибка данных фидера (разбор файла или валидация сети)"""

    exit_code = 2

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = list(violations or [])

    def __str__(self) -> str:
        if not self.violations:
            return self.message
        lines = [self.message] + [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


class UnknownElementError(NetworkDataError, KeyError):
    """Ссылка на несуществующий узел, ветвь, нагрузку или кандидата"""

    def __str__(self) -> str:
        return self.message


class SolverError(PlannerError):
    """Ошибка расчета (потокораспределение, оптимизация)"""

    exit_code = 3


class PowerFlowError(SolverError):
    """Нулевое напряжение при делении в уравнении тока узла"""


class OptimizationError(SolverError):
    """Целевая функция вернула нечисловое значение"""
