"""
Модели элементов распределительной сети

Структура файла фидера:
1. nodes - узлы (источник, соединение, нагрузка)
2. branches - ветви (линии с сопротивлением, длиной, показателями надежности)
3. transformers - распределительные трансформаторы в узлах
4. load_points - точки нагрузки (средняя мощность, структура потребителей, стоимость недоотпуска)
5. candidates - кандидаты на установку выключателей и пунктов маневра

Значения по умолчанию для показателей надежности - типовые данные:
линии 0.0075 отказ/год/км и 2 ч ремонта, трансформаторы 0.004 отказ/год и 4 ч.
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Классы потребителей для стоимости недоотпуска
CUSTOMER_CLASSES = ("res", "com", "ind", "agr", "gen")

LINE_FAILURE_RATE_PER_KM = 0.0075
LINE_REPAIR_TIME = 2.0
TRANSFORMER_FAILURE_RATE = 0.004
TRANSFORMER_REPAIR_TIME = 4.0

CLASS_MIX_TOLERANCE = 1e-9


class NodeKind(str, Enum):
    SOURCE = "source"
    JUNCTION = "junction"
    LOAD = "load"


class Construction(str, Enum):
    OVERHEAD = "overhead"
    UNDERGROUND = "underground"


class SiteKind(str, Enum):
    SWITCH = "switch"
    MANEUVER = "maneuver"


class _Record(BaseModel):
    """Базовый класс для всех записей сети (неизменяемые)"""

    model_config = ConfigDict(frozen=True, extra="forbid")


# Узлы
class Node(_Record):
    id: str
    kind: NodeKind = NodeKind.JUNCTION
    nominal_voltage: float = 1.0

    def __repr__(self):
        return f"<Node(id={self.id}, kind={self.kind.value})>"


# Ветви (ориентация from_node -> to_node от источника)
class Branch(_Record):
    id: str
    from_node: str
    to_node: str
    resistance: float = Field(ge=0.0)
    reactance: float = Field(ge=0.0)
    length: float = Field(gt=0.0)  # км
    construction: Construction = Construction.OVERHEAD
    failure_rate_per_km: float = Field(default=LINE_FAILURE_RATE_PER_KM, ge=0.0)
    repair_time: float = Field(default=LINE_REPAIR_TIME, gt=0.0)  # ч
    manual_switch: bool = False  # существующий разъединитель с ручным управлением

    @property
    def failure_rate(self) -> float:
        """Интенсивность отказов ветви, отказ/год"""
        return self.failure_rate_per_km * self.length

    def reversed(self) -> "Branch":
        """Та же ветвь с обратной ориентацией"""
        return self.model_copy(update={"from_node": self.to_node, "to_node": self.from_node})

    def __repr__(self):
        return f"<Branch(id={self.id}, {self.from_node}->{self.to_node})>"


# Распределительные трансформаторы
class TransformerUnit(_Record):
    id: str
    at_node: str
    failure_rate: float = Field(default=TRANSFORMER_FAILURE_RATE, ge=0.0)
    repair_time: float = Field(default=TRANSFORMER_REPAIR_TIME, gt=0.0)

    def __repr__(self):
        return f"<TransformerUnit(id={self.id}, at={self.at_node})>"


# Точки нагрузки (отрицательная мощность - распределенная генерация)
class LoadPoint(_Record):
    id: str
    at_node: str
    mean_active: float = 0.0  # кВт
    sigma_active: float = Field(default=0.0, ge=0.0)
    mean_reactive: float = 0.0  # квар
    class_mix: Dict[str, float] = Field(default_factory=lambda: {"res": 1.0})
    class_interrupt_cost: Dict[str, float] = Field(default_factory=dict)  # $/кВт*ч
    importance: float = Field(default=1.0, ge=0.0)

    @field_validator("class_mix", "class_interrupt_cost")
    @classmethod
    def _known_classes(cls, value: Dict[str, float]) -> Dict[str, float]:
        unknown = sorted(set(value) - set(CUSTOMER_CLASSES))
        if unknown:
            raise ValueError(f"неизвестные классы потребителей: {unknown}")
        return value

    @property
    def is_generation(self) -> bool:
        return self.mean_active < 0.0

    def class_mix_error(self) -> Optional[str]:
        """Описание нарушения структуры потребителей или None"""
        for name, share in self.class_mix.items():
            if not 0.0 <= share <= 1.0:
                return f"доля класса {name} вне [0, 1]: {share}"
        total = sum(self.class_mix.values())
        if abs(total - 1.0) > CLASS_MIX_TOLERANCE:
            return f"сумма долей классов {total} != 1"
        return None

    def __repr__(self):
        return f"<LoadPoint(id={self.id}, at={self.at_node}, P={self.mean_active})>"


# Кандидаты на установку
class CandidateSite(_Record):
    id: str
    kind: SiteKind
    on_branch: Optional[str] = None  # для выключателя
    between: Optional[Tuple[str, str]] = None  # для пункта маневра
    build_cost: float = Field(default=0.0, ge=0.0)
    # Параметры линии пункта маневра (нужны только для реконфигурации)
    resistance: float = Field(default=0.0, ge=0.0)
    reactance: float = Field(default=0.0, ge=0.0)
    length: float = Field(default=0.1, gt=0.0)
    transfer_branch: Optional[str] = None

    @model_validator(mode="after")
    def _kind_fields(self) -> "CandidateSite":
        if self.kind is SiteKind.SWITCH and self.on_branch is None:
            raise ValueError(f"кандидат {self.id}: для выключателя нужен on_branch")
        if self.kind is SiteKind.MANEUVER and self.between is None:
            raise ValueError(f"кандидат {self.id}: для пункта маневра нужен between")
        return self

    def __repr__(self):
        return f"<CandidateSite(id={self.id}, kind={self.kind.value})>"


# Файл фидера целиком
class FeederFile(_Record):
    name: str = "feeder"
    base_kva: float = Field(default=1000.0, gt=0.0)
    base_kv: float = Field(default=20.0, gt=0.0)
    nodes: List[Node]
    branches: List[Branch] = Field(default_factory=list)
    transformers: List[TransformerUnit] = Field(default_factory=list)
    load_points: List[LoadPoint] = Field(default_factory=list)
    candidates: List[CandidateSite] = Field(default_factory=list)
