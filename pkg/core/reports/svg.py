"""
SVG-диаграмма фронта Парето (F1 по оси x, F2 по оси y), компромисс - синий квадрат
"""

import logging
from pathlib import Path
from typing import List, Optional

from matplotlib.figure import Figure

from ..placement import EvaluatedPlan

logger = logging.getLogger(__name__)


def front_figure(
    front: List[EvaluatedPlan],
    compromise: Optional[EvaluatedPlan] = None,
    true_front: Optional[List[EvaluatedPlan]] = None,
    title: str = "Pareto front",
) -> Figure:
    """Диаграмма без pyplot: Figure не регистрируется в глобальном состоянии"""
    fig = Figure(figsize=(8, 6))
    ax = fig.add_subplot()

    reference = [e.objectives for e in (true_front or []) if not e.penalized]
    if reference:
        ax.scatter([p[0] for p in reference], [p[1] for p in reference], s=60,
                   facecolors="none", edgecolors="gray", label="exhaustive front")
    points = [e.objectives for e in front if not e.penalized]
    if points:
        ax.scatter([p[0] for p in points], [p[1] for p in points], s=20, c="red", label="found front")
    if compromise is not None and not compromise.penalized:
        ax.scatter([compromise.f1], [compromise.f2], s=80, c="blue", marker="s", label="compromise")

    ax.set_title(title)
    ax.set_xlabel("F1, cost")
    ax.set_ylabel("F2, interruption cost per year")
    ax.grid(True, alpha=0.3)
    if points or reference:
        ax.legend(loc="upper right")
    fig.tight_layout()
    return fig


def write_front_svg(path: Path, *args, **kwargs):
    fig = front_figure(*args, **kwargs)
    # без даты в метаданных
    fig.savefig(path, format="svg", metadata={"Date": None})
    logger.info(f"💾 {path.name}")
