"""
Радиальная сеть: хранение элементов, проверка топологии и запросы к графу

Network неизменяема после создания и может разделяться между параллельными расчетами.
Запросы к графу (путь до источника, нагрузки ниже ветви) требуют радиальной сети.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..errors import NetworkDataError, UnknownElementError
from .models import Branch, CandidateSite, LoadPoint, Node, NodeKind, SiteKind, TransformerUnit

logger = logging.getLogger(__name__)


# ==================== ОТЧЕТ О ПРОВЕРКЕ ====================

@dataclass(frozen=True)
class Violation:
    """Одно нарушение инварианта сети"""
    code: str
    message: str
    ids: Tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass
class ValidationReport:
    """Список нарушений; пустой отчет - сеть корректна"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, *ids: str):
        self.violations.append(Violation(code, message, tuple(ids)))

    def codes(self) -> List[str]:
        return [v.code for v in self.violations]

    def mentions(self, element_id: str) -> bool:
        """Упоминается ли элемент хотя бы в одном нарушении"""
        return any(element_id in v.ids for v in self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


# ==================== ДЕРЕВО ФИДЕРОВ ====================

@dataclass(frozen=True)
class _Tree:
    """Ориентированное дерево, построенное обходом от источников"""
    parent_branch: Mapping[str, Optional[str]]  # узел -> входящая ветвь
    feeder_of: Mapping[str, str]  # узел -> id источника
    depth: Mapping[str, int]
    children: Mapping[str, Tuple[str, ...]]  # узел -> исходящие ветви
    branch_order: Tuple[str, ...]  # от источника к концам (BFS)


def _adjacency(nodes: Iterable[str], branches: Iterable[Branch]) -> Dict[str, List[Branch]]:
    adjacency: Dict[str, List[Branch]] = {node_id: [] for node_id in nodes}
    for branch in branches:
        adjacency.setdefault(branch.from_node, []).append(branch)
        adjacency.setdefault(branch.to_node, []).append(branch)
    return adjacency


def orient_branches(nodes: Sequence[Node], branches: Sequence[Branch]) -> List[Branch]:
    """
    Переориентировать ветви обходом от источников (from_node - сторона источника).
    Порядок ветвей сохраняется; ветви, недостижимые от источника, остаются как есть.
    """
    adjacency = _adjacency((n.id for n in nodes), branches)
    oriented: Dict[str, Branch] = {}
    visited = set()
    for source in (n.id for n in nodes if n.kind is NodeKind.SOURCE):
        if source in visited:
            continue
        visited.add(source)
        queue = deque([source])
        while queue:
            node_id = queue.popleft()
            for branch in adjacency.get(node_id, []):
                if branch.id in oriented:
                    continue
                other = branch.to_node if branch.from_node == node_id else branch.from_node
                if other in visited:
                    continue
                oriented[branch.id] = branch if branch.from_node == node_id else branch.reversed()
                visited.add(other)
                queue.append(other)
    return [oriented.get(b.id, b) for b in branches]


# ==================== СЕТЬ ====================

class Network:
    """
    Радиальная распределительная сеть из одного или нескольких фидеров.
    Каждый источник задает свой фидер; id фидера = id узла-источника.
    """

    def __init__(
        self,
        nodes: Sequence[Node],
        branches: Sequence[Branch] = (),
        transformers: Sequence[TransformerUnit] = (),
        load_points: Sequence[LoadPoint] = (),
        candidates: Sequence[CandidateSite] = (),
        name: str = "feeder",
        base_kva: float = 1000.0,
        base_kv: float = 20.0,
    ):
        self.name = name
        self.base_kva = float(base_kva)
        self.base_kv = float(base_kv)
        # Исходные списки сохраняются целиком (включая дубликаты) для validate_network
        self.node_list: Tuple[Node, ...] = tuple(nodes)
        self.branch_list: Tuple[Branch, ...] = tuple(branches)
        self.transformer_list: Tuple[TransformerUnit, ...] = tuple(transformers)
        self.load_point_list: Tuple[LoadPoint, ...] = tuple(load_points)
        self.candidate_list: Tuple[CandidateSite, ...] = tuple(candidates)

        self.nodes: Mapping[str, Node] = MappingProxyType({n.id: n for n in self.node_list})
        self.branches: Mapping[str, Branch] = MappingProxyType({b.id: b for b in self.branch_list})
        self.transformers: Mapping[str, TransformerUnit] = MappingProxyType(
            {t.id: t for t in self.transformer_list}
        )
        self.load_points: Mapping[str, LoadPoint] = MappingProxyType(
            {lp.id: lp for lp in self.load_point_list}
        )
        self.candidates: Mapping[str, CandidateSite] = MappingProxyType(
            {c.id: c for c in self.candidate_list}
        )

    def __repr__(self):
        return (
            f"<Network(name={self.name}, nodes={len(self.nodes)}, branches={len(self.branches)}, "
            f"load_points={len(self.load_points)}, candidates={len(self.candidates)})>"
        )

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            (self.name, self.base_kva, self.base_kv) == (other.name, other.base_kva, other.base_kv)
            and self.node_list == other.node_list
            and self.branch_list == other.branch_list
            and self.transformer_list == other.transformer_list
            and self.load_point_list == other.load_point_list
            and self.candidate_list == other.candidate_list
        )

    __hash__ = None

    def __reduce__(self):
        # MappingProxyType не сериализуется; сеть пересобирается из исходных списков
        return (
            Network,
            (self.node_list, self.branch_list, self.transformer_list, self.load_point_list,
             self.candidate_list, self.name, self.base_kva, self.base_kv),
        )

    # ---------- элементы ----------

    @property
    def sources(self) -> Tuple[str, ...]:
        return tuple(n.id for n in self.node_list if n.kind is NodeKind.SOURCE)

    @cached_property
    def switch_sites(self) -> Tuple[CandidateSite, ...]:
        """Кандидаты на выключатели в порядке объявления"""
        return tuple(c for c in self.candidate_list if c.kind is SiteKind.SWITCH)

    @cached_property
    def maneuver_sites(self) -> Tuple[CandidateSite, ...]:
        """Кандидаты на пункты маневра в порядке объявления"""
        return tuple(c for c in self.candidate_list if c.kind is SiteKind.MANEUVER)

    @cached_property
    def load_points_by_node(self) -> Mapping[str, Tuple[str, ...]]:
        """Точки нагрузки по узлам (порядок объявления)"""
        grouped: Dict[str, List[str]] = {}
        for lp in self.load_point_list:
            grouped.setdefault(lp.at_node, []).append(lp.id)
        return MappingProxyType({k: tuple(v) for k, v in grouped.items()})

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownElementError(f"неизвестный узел: {node_id}") from None

    def branch(self, branch_id: str) -> Branch:
        try:
            return self.branches[branch_id]
        except KeyError:
            raise UnknownElementError(f"неизвестная ветвь: {branch_id}") from None

    def load_point(self, lp_id: str) -> LoadPoint:
        try:
            return self.load_points[lp_id]
        except KeyError:
            raise UnknownElementError(f"неизвестная точка нагрузки: {lp_id}") from None

    def transformer(self, transformer_id: str) -> TransformerUnit:
        try:
            return self.transformers[transformer_id]
        except KeyError:
            raise UnknownElementError(f"неизвестный трансформатор: {transformer_id}") from None

    # ---------- граф ----------

    def graph(self) -> nx.MultiGraph:
        """Неориентированный мультиграф ветвей (ключ ребра = id ветви)"""
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for b in self.branch_list:
            g.add_edge(b.from_node, b.to_node, key=b.id)
        return g

    @cached_property
    def _tree(self) -> _Tree:
        report = validate_topology(self)
        if not report.is_valid:
            raise NetworkDataError("сеть не является радиальной", [str(v) for v in report])

        adjacency = _adjacency(self.nodes, self.branch_list)
        parent: Dict[str, Optional[str]] = {}
        feeder_of: Dict[str, str] = {}
        depth: Dict[str, int] = {}
        children: Dict[str, List[str]] = {n: [] for n in self.nodes}
        order: List[str] = []
        for source in self.sources:
            parent[source] = None
            feeder_of[source] = source
            depth[source] = 0
            queue = deque([source])
            while queue:
                node_id = queue.popleft()
                for b in adjacency[node_id]:
                    if b.from_node != node_id:
                        continue
                    child = b.to_node
                    parent[child] = b.id
                    feeder_of[child] = source
                    depth[child] = depth[node_id] + 1
                    children[node_id].append(b.id)
                    order.append(b.id)
                    queue.append(child)
        return _Tree(
            parent_branch=MappingProxyType(parent),
            feeder_of=MappingProxyType(feeder_of),
            depth=MappingProxyType(depth),
            children=MappingProxyType({k: tuple(v) for k, v in children.items()}),
            branch_order=tuple(order),
        )

    @property
    def branch_order(self) -> Tuple[str, ...]:
        """Ветви в порядке обхода от источников к концам фидеров"""
        return self._tree.branch_order

    def feeder_of(self, node_id: str) -> str:
        self.node(node_id)
        return self._tree.feeder_of[node_id]

    def parent_branch(self, node_id: str) -> Optional[str]:
        self.node(node_id)
        return self._tree.parent_branch[node_id]

    def child_branches(self, node_id: str) -> Tuple[str, ...]:
        self.node(node_id)
        return self._tree.children[node_id]

    def depth(self, node_id: str) -> int:
        self.node(node_id)
        return self._tree.depth[node_id]

    @cached_property
    def feeders(self) -> Mapping[str, Tuple[str, ...]]:
        """Источник -> ветви фидера в порядке обхода"""
        grouped: Dict[str, List[str]] = {s: [] for s in self.sources}
        for b_id in self.branch_order:
            grouped[self._tree.feeder_of[self.branches[b_id].to_node]].append(b_id)
        return MappingProxyType({k: tuple(v) for k, v in grouped.items()})

    def feeder_nodes(self, source: str) -> Tuple[str, ...]:
        return (source,) + tuple(self.branches[b].to_node for b in self.feeders[source])

    @cached_property
    def _paths(self) -> Mapping[str, Tuple[str, ...]]:
        paths: Dict[str, Tuple[str, ...]] = {s: () for s in self.sources}
        for b_id in self.branch_order:
            b = self.branches[b_id]
            paths[b.to_node] = (b_id,) + paths[b.from_node]
        return MappingProxyType(paths)

    def path_to_source(self, node_id: str) -> List[str]:
        """Ветви от узла до источника фидера (от конца к источнику)"""
        self.node(node_id)
        try:
            return list(self._paths[node_id])
        except KeyError:
            raise UnknownElementError(f"узел {node_id} недостижим от источника") from None

    @cached_property
    def _subtrees(self) -> Mapping[str, FrozenSet[str]]:
        # Узлы ниже ветви (включая ее конечный узел), снизу вверх по обходу
        subtree: Dict[str, FrozenSet[str]] = {}
        for b_id in reversed(self.branch_order):
            b = self.branches[b_id]
            nodes = {b.to_node}
            for child in self._tree.children[b.to_node]:
                nodes |= subtree[child]
            subtree[b_id] = frozenset(nodes)
        return MappingProxyType(subtree)

    def subtree_nodes(self, branch_id: str) -> FrozenSet[str]:
        """Узлы, питание которых проходит через ветвь"""
        self.branch(branch_id)
        return self._subtrees[branch_id]

    def downstream_load_points(self, branch_id: str) -> FrozenSet[str]:
        """Точки нагрузки, путь которых к источнику проходит через ветвь"""
        nodes = self.subtree_nodes(branch_id)
        return frozenset(lp.id for lp in self.load_point_list if lp.at_node in nodes)

    def load_point_path(self, lp_id: str) -> Tuple[str, ...]:
        return self._paths[self.load_point(lp_id).at_node]


# ==================== ПРОВЕРКА ====================

def _duplicates(ids: Iterable[str]) -> List[str]:
    seen, dups = set(), []
    for element_id in ids:
        if element_id in seen and element_id not in dups:
            dups.append(element_id)
        seen.add(element_id)
    return dups


def validate_topology(net: Network) -> ValidationReport:
    """Проверка ссылок, дубликатов и радиальности (без проверки данных нагрузок)"""
    report = ValidationReport()

    for kind, records in (
        ("node", net.node_list),
        ("branch", net.branch_list),
        ("transformer", net.transformer_list),
        ("load_point", net.load_point_list),
        ("candidate", net.candidate_list),
    ):
        for dup in _duplicates(r.id for r in records):
            report.add("duplicate_id", f"повторяющийся id ({kind}): {dup}", dup)

    dangling = False
    for b in net.branch_list:
        for end in (b.from_node, b.to_node):
            if end not in net.nodes:
                report.add("unknown_node", f"ветвь {b.id} ссылается на неизвестный узел {end}", b.id, end)
                dangling = True
        if b.from_node == b.to_node:
            report.add("self_loop", f"ветвь {b.id} замкнута на узел {b.from_node}", b.id)
            dangling = True
    if dangling:
        return report

    g = net.graph()
    simple = nx.Graph()
    simple.add_nodes_from(g.nodes)
    edge_ids: Dict[FrozenSet[str], str] = {}
    for u, v, key in g.edges(keys=True):
        pair = frozenset((u, v))
        if pair in edge_ids:
            report.add("cycle", f"параллельные ветви образуют цикл: {edge_ids[pair]}, {key}", edge_ids[pair], key)
            continue
        edge_ids[pair] = key
        simple.add_edge(u, v)
    for cycle in nx.cycle_basis(simple):
        ring = [edge_ids[frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))] for i in range(len(cycle))]
        report.add("cycle", f"ветви образуют цикл: {', '.join(sorted(ring))}", *sorted(ring))

    for component in nx.connected_components(simple):
        sources = sorted(n for n in component if net.nodes[n].kind is NodeKind.SOURCE)
        if not sources:
            orphans = sorted(component)
            report.add("unreachable", f"узлы без источника: {', '.join(orphans)}", *orphans)
        elif len(sources) > 1:
            report.add("multiple_sources", f"несколько источников в одном фидере: {', '.join(sources)}", *sources)

    if report.is_valid:
        # Ориентация: from_node строго ближе к источнику, чем to_node
        depth: Dict[str, int] = {}
        for source in net.sources:
            depth.update(nx.single_source_shortest_path_length(simple, source))
        for b in net.branch_list:
            if depth[b.from_node] >= depth[b.to_node]:
                report.add(
                    "orientation",
                    f"ветвь {b.id} ориентирована от {b.from_node} к источнику",
                    b.id,
                )
    return report


def validate_network(net: Network) -> ValidationReport:
    """
    Полная проверка сети. Нарушения возвращаются как данные, исключения не бросаются.
    """
    report = validate_topology(net)

    for t in net.transformer_list:
        if t.at_node not in net.nodes:
            report.add("unknown_node", f"трансформатор {t.id} в неизвестном узле {t.at_node}", t.id, t.at_node)

    reachable = None
    if report.is_valid:
        reachable = set(net._paths)
    for lp in net.load_point_list:
        if lp.at_node not in net.nodes:
            report.add("unknown_node", f"точка нагрузки {lp.id} в неизвестном узле {lp.at_node}", lp.id, lp.at_node)
        elif reachable is not None and lp.at_node not in reachable:
            report.add("unreachable", f"точка нагрузки {lp.id} недостижима от источника", lp.id)
        problem = lp.class_mix_error()
        if problem:
            report.add("class_mix", f"точка нагрузки {lp.id}: {problem}", lp.id)

    switched_branches: Dict[str, str] = {}
    for c in net.candidate_list:
        if c.kind is SiteKind.SWITCH:
            if c.on_branch not in net.branches:
                report.add("unknown_branch", f"кандидат {c.id} на неизвестной ветви {c.on_branch}", c.id)
            elif c.on_branch in switched_branches:
                report.add(
                    "duplicate_site",
                    f"кандидаты {switched_branches[c.on_branch]} и {c.id} на одной ветви {c.on_branch}",
                    switched_branches[c.on_branch], c.id,
                )
            else:
                switched_branches[c.on_branch] = c.id
            continue

        a, b = c.between
        missing = [n for n in (a, b) if n not in net.nodes]
        if missing:
            report.add("unknown_node", f"пункт маневра {c.id} ссылается на неизвестные узлы {missing}", c.id)
            continue
        if a == b or any({a, b} == {br.from_node, br.to_node} for br in net.branch_list):
            report.add("tie_connected", f"пункт маневра {c.id} соединяет уже связанные узлы {a}, {b}", c.id)
        elif reachable is not None and a in reachable and b in reachable:
            if net.feeder_of(a) == net.feeder_of(b):
                report.add("tie_same_feeder", f"пункт маневра {c.id} внутри одного фидера", c.id)
        if c.transfer_branch is not None and c.transfer_branch not in net.branches:
            report.add("unknown_branch", f"пункт маневра {c.id}: неизвестная ветвь {c.transfer_branch}", c.id)

    if report.is_valid:
        logger.debug(f"Сеть {net.name} корректна")
    return report
