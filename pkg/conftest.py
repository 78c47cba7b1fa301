"""
Общие фикстуры тестов: встроенные фидеры и небольшие сети, собранные вручную
"""

from pathlib import Path

import pytest

from core.network import load_network, network_from_dict

DATA_DIR = Path(__file__).parent / "data"
FEEDERS_DIR = DATA_DIR / "feeders"
BUNDLED_FEEDERS = ["two_bus", "four_bus", "eight_lp", "ten_candidate"]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: долгие статистические и оптимизационные проверки")


def feeder_dict(
    branches,
    load_points=(),
    transformers=(),
    candidates=(),
    sources=("S",),
    name="hand_built",
):
    """
    Документ фидера по кратким описаниям:
      branches: (id, from, to, length[, extra])
      load_points: (id, node, kW[, extra])
    """
    node_ids = list(sources)
    for b in branches:
        for end in (b[1], b[2]):
            if end not in node_ids:
                node_ids.append(end)
    nodes = [{"id": n, "kind": "source" if n in sources else "junction"} for n in node_ids]
    branch_docs = []
    for b in branches:
        doc = {"id": b[0], "from_node": b[1], "to_node": b[2], "resistance": 0.001, "reactance": 0.001,
               "length": b[3]}
        if len(b) > 4:
            doc.update(b[4])
        branch_docs.append(doc)
    lp_docs = []
    for lp in load_points:
        doc = {"id": lp[0], "at_node": lp[1], "mean_active": lp[2], "mean_reactive": 0.0,
               "class_interrupt_cost": {"res": 1.0}}
        if len(lp) > 3:
            doc.update(lp[3])
        lp_docs.append(doc)
    return {
        "name": name,
        "nodes": nodes,
        "branches": branch_docs,
        "transformers": list(transformers),
        "load_points": lp_docs,
        "candidates": list(candidates),
    }


@pytest.fixture
def build_network():
    """Фабрика сетей из кратких описаний (см. feeder_dict)"""
    def _build(*args, **kwargs):
        return network_from_dict(feeder_dict(*args, **kwargs))
    return _build


@pytest.fixture(scope="session")
def feeders():
    """Все встроенные фидеры по имени"""
    return {name: load_network(str(FEEDERS_DIR / f"{name}.json")) for name in BUNDLED_FEEDERS}


@pytest.fixture(scope="session")
def two_bus(feeders):
    return feeders["two_bus"]


@pytest.fixture(scope="session")
def four_bus(feeders):
    return feeders["four_bus"]


@pytest.fixture(scope="session")
def eight_lp(feeders):
    return feeders["eight_lp"]


@pytest.fixture(scope="session")
def ten_candidate(feeders):
    return feeders["ten_candidate"]


@pytest.fixture
def y_feeder(build_network):
    """
    Y-образный фидер:  S -B1- J -B2- K -B3- L1
                                     \\-B4- L2
    и отвод J -B5- M с нагрузкой на M
    """
    return build_network(
        branches=[("B1", "S", "J", 1.0), ("B2", "J", "K", 1.0), ("B3", "K", "L1", 1.0),
                  ("B4", "K", "L2", 1.0), ("B5", "J", "M", 1.0)],
        load_points=[("LP1", "L1", 100.0), ("LP2", "L2", 100.0), ("LPM", "M", 100.0)],
    )
