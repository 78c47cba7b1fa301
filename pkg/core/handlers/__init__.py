"""
Handlers package: обработчики подкоманд CLI
"""

from . import analysis, solve
from .common import handle_errors, staged_output

__all__ = ['analysis', 'solve', 'handle_errors', 'staged_output']
