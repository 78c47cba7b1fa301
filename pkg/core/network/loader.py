"""
Загрузка файла фидера (JSON) и запись нормализованной копии
"""

import json
import logging
import os
from typing import Any, Dict, List

from pydantic import ValidationError

from ..errors import NetworkDataError
from .models import FeederFile
from .topology import Network, orient_branches, validate_network

logger = logging.getLogger(__name__)


def _field_path(data: Any, loc) -> str:
    """Путь к полю в виде branches[2](id=B3).resistance"""
    parts: List[str] = []
    node = data
    for item in loc:
        if isinstance(item, int):
            label = f"[{item}]"
            try:
                node = node[item]
                if isinstance(node, dict) and "id" in node:
                    label += f"(id={node['id']})"
            except (IndexError, KeyError, TypeError):
                node = None
            parts.append(label)
        else:
            parts.append(("." if parts else "") + str(item))
            node = node.get(item) if isinstance(node, dict) else None
    return "".join(parts)


def network_from_dict(data: Dict[str, Any], source: str = "<dict>") -> Network:
    """Собрать сеть из разобранного документа: проверка полей, ориентация, валидация"""
    try:
        feeder = FeederFile.model_validate(data)
    except ValidationError as e:
        problems = [f"{_field_path(data, err['loc'])}: {err['msg']}" for err in e.errors()]
        raise NetworkDataError(f"ошибка в полях файла фидера {source}", problems) from None

    branches = orient_branches(feeder.nodes, feeder.branches)
    net = Network(
        nodes=feeder.nodes,
        branches=branches,
        transformers=feeder.transformers,
        load_points=feeder.load_points,
        candidates=feeder.candidates,
        name=feeder.name,
        base_kva=feeder.base_kva,
        base_kv=feeder.base_kv,
    )
    report = validate_network(net)
    if not report.is_valid:
        raise NetworkDataError(f"сеть {source} не прошла проверку", [str(v) for v in report])
    return net


def load_network(path: str) -> Network:
    """
    Загрузить фидер из файла. Ошибки разбора содержат строку/столбец,
    ошибки валидации перечисляются полностью.
    """
    if not os.path.exists(path):
        raise NetworkDataError(f"файл фидера не найден: {path}")

    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkDataError(f"{path}: ошибка разбора JSON в строке {e.lineno}, столбец {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise NetworkDataError(f"{path}: ожидается объект с массивами nodes, branches, ...")

    net = network_from_dict(data, source=path)
    logger.info(f"📂 Загружен фидер {net.name}: {len(net.nodes)} узлов, {len(net.branches)} ветвей, "
                f"{len(net.load_points)} нагрузок, {len(net.candidates)} кандидатов")
    return net


def network_to_dict(net: Network) -> Dict[str, Any]:
    """Нормализованный документ (ветви уже ориентированы от источника)"""
    feeder = FeederFile(
        name=net.name,
        base_kva=net.base_kva,
        base_kv=net.base_kv,
        nodes=list(net.node_list),
        branches=list(net.branch_list),
        transformers=list(net.transformer_list),
        load_points=list(net.load_point_list),
        candidates=list(net.candidate_list),
    )
    return feeder.model_dump(mode="json", exclude_none=True)


def dump_network(net: Network, path: str):
    """Записать нормализованный файл фидера"""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(network_to_dict(net), f, indent=2, ensure_ascii=False)
        f.write("\n")
    logger.info(f"💾 Нормализованный фидер записан: {path}")
