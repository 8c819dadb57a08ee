"""
분배 규칙 분류
일반화 가중 Shapley(GWS) 규칙 여부를 판정하고, 아니면 위반 증거를 돌려준다.
"""
import enum
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from app.domain.game.models import DistributionRule, Graph


logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    GWS = "gws"
    VIOLATION = "violation"


class ViolationKind(str, enum.Enum):
    DIGRAPH_CYCLE = "digraph-cycle"
    INCONSISTENT_CYCLE = "inconsistent-cycle"


@dataclass(frozen=True)
class GwsCertificate:
    """
    GWS 증명서

    - sigma[i]: 노드 i의 순위 (α_ij = 0이면 sigma[i] < sigma[j])
    - gamma[i]: 노드 가중치 (양쪽 비율이 양수인 간선에서 α_ij/(α_ij+α_ji) = γ_i/(γ_i+γ_j))
    """
    sigma: Tuple[int, ...]
    gamma: Tuple[Fraction, ...]
    components: Tuple[Tuple[int, ...], ...]

    @property
    def order(self) -> Tuple[int, ...]:
        """sigma 순서로 나열한 노드"""
        return tuple(sorted(range(len(self.sigma)), key=self.sigma.__getitem__))


@dataclass(frozen=True)
class DigraphCycle:
    """
    성분 방향 그래프 D의 순환 (길이 1이면 자기 루프)

    arcs[t] = (i, j): α_ij = 0, i ∈ components[t], j ∈ components[t+1] (마지막은 처음으로)
    """
    components: Tuple[Tuple[int, ...], ...]
    arcs: Tuple[Tuple[int, int], ...]

    kind = ViolationKind.DIGRAPH_CYCLE

    @property
    def is_self_loop(self) -> bool:
        return len(self.arcs) == 1


@dataclass(frozen=True)
class InconsistentCycle:
    """
    비율 곱이 1이 아닌 양수 비율 순환 H = (p_1, ..., p_h, p_1)

    alpha_product = Π α_{p_{i+1} p_i} / Π α_{p_i p_{i+1}} < 1 이 되도록 방향을 맞춘다.
    """
    nodes: Tuple[int, ...]
    alpha_product: Fraction

    kind = ViolationKind.INCONSISTENT_CYCLE


Violation = Union[DigraphCycle, InconsistentCycle]


@dataclass(frozen=True)
class ShapleyClassification:
    """classify_rule 결과: 증명서 또는 위반 증거 중 하나"""
    certificate: Optional[GwsCertificate] = None
    violation: Optional[Violation] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.GWS if self.certificate is not None else Verdict.VIOLATION

    @property
    def is_gws(self) -> bool:
        return self.certificate is not None


def positive_share_graph(graph: Graph, rule: DistributionRule) -> nx.Graph:
    """양쪽 비율이 모두 양수인 간선만 남긴 그래프 (고립 노드 포함)"""
    positive = nx.Graph()
    positive.add_nodes_from(range(graph.node_count))
    positive.add_edges_from(sorted(
        edge.key for edge, (a_uv, a_vu) in zip(graph.edges, rule.shares) if a_uv > 0 and a_vu > 0
    ))
    return positive


def share_components(graph: Graph, rule: DistributionRule) -> List[Tuple[int, ...]]:
    """양수 비율 연결 성분 Q_1..Q_r (가장 작은 노드 id 순)"""
    components = [tuple(sorted(c)) for c in nx.connected_components(positive_share_graph(graph, rule))]
    return sorted(components)


def cycle_alpha_product(graph: Graph, rule: DistributionRule, nodes: Tuple[int, ...]) -> Fraction:
    """α(H) = Π α_{p_{i+1} p_i} / Π α_{p_i p_{i+1}}"""
    product = Fraction(1)
    h = len(nodes)
    for pos in range(h):
        a, b = nodes[pos], nodes[(pos + 1) % h]
        index = graph.edge_index(a, b)
        product *= rule.alpha(graph, index, b) / rule.alpha(graph, index, a)
    return product


def _component_digraph(
    graph: Graph, rule: DistributionRule, comp_of: Dict[int, int]
) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(sorted(set(comp_of.values())))
    for edge, (a_uv, a_vu) in sorted(zip(graph.edges, rule.shares), key=lambda item: item[0].key):
        if a_uv > 0 and a_vu > 0:
            continue
        zero_side, other = (edge.u, edge.v) if a_uv == 0 else (edge.v, edge.u)
        a, b = comp_of[zero_side], comp_of[other]
        if not digraph.has_edge(a, b):
            digraph.add_edge(a, b, arc=(zero_side, other))
    return digraph


def _find_digraph_cycle(
    digraph: nx.DiGraph, components: List[Tuple[int, ...]]
) -> Optional[DigraphCycle]:
    for a in sorted(digraph.nodes):
        if digraph.has_edge(a, a):
            return DigraphCycle((components[a],), (digraph.edges[a, a]["arc"],))
    try:
        arcs = nx.find_cycle(digraph)
    except nx.NetworkXNoCycle:
        return None
    return DigraphCycle(
        tuple(components[a] for a, _ in arcs),
        tuple(digraph.edges[a, b]["arc"] for a, b in arcs),
    )


def _tree_path(parent: Dict[int, Optional[int]], node: int) -> List[int]:
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _propagate_gamma(
    graph: Graph,
    rule: DistributionRule,
    positive: nx.Graph,
    component: Tuple[int, ...],
    gamma: Dict[int, Fraction],
) -> Optional[InconsistentCycle]:
    """
    신장 트리를 따라 γ 전파 후 트리 밖 간선의 일관성 확인

    가장 작은 노드의 γ를 1로 고정하고 γ_j = γ_i·α_ji/α_ij 로 전파한다.
    """
    root = component[0]
    gamma[root] = Fraction(1)
    parent: Dict[int, Optional[int]] = {root: None}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for other in sorted(positive.neighbors(node)):
            if other in parent:
                continue
            index = graph.edge_index(node, other)
            gamma[other] = gamma[node] * rule.alpha(graph, index, other) / rule.alpha(graph, index, node)
            parent[other] = node
            queue.append(other)

    members = set(component)
    for u, v in sorted(e for e in (tuple(sorted(p)) for p in positive.edges) if e[0] in members):
        if parent.get(u) == v or parent.get(v) == u:
            continue
        index = graph.edge_index(u, v)
        if rule.alpha(graph, index, u) * gamma[v] == rule.alpha(graph, index, v) * gamma[u]:
            continue
        path_u, path_v = _tree_path(parent, u), _tree_path(parent, v)
        common = 0
        while common < min(len(path_u), len(path_v)) and path_u[common] == path_v[common]:
            common += 1
        # lca부터 u까지 내려간 뒤 v에서 lca 직전까지 올라온다
        nodes = tuple(path_u[common - 1:]) + tuple(reversed(path_v[common:]))
        product = cycle_alpha_product(graph, rule, nodes)
        if product > 1:
            nodes = (nodes[0],) + tuple(reversed(nodes[1:]))
            product = 1 / product
        return InconsistentCycle(nodes, product)
    return None


def classify_rule(graph: Graph, rule: DistributionRule) -> ShapleyClassification:
    """
    분배 규칙이 일반화 가중 Shapley 규칙인지 판정

    1. 양수 비율 성분 Q_1..Q_r과 성분 방향 그래프 D 구성
    2. D의 자기 루프/순환 확인
    3. 성분별 γ 전파와 트리 밖 간선 확인 (성분은 가장 작은 노드 id 순, 간선은 사전식 순)

    Returns:
        ShapleyClassification (GWS 증명서 또는 처음 발견한 위반)
    """
    positive = positive_share_graph(graph, rule)
    components = share_components(graph, rule)
    comp_of = {node: index for index, comp in enumerate(components) for node in comp}
    digraph = _component_digraph(graph, rule, comp_of)

    digraph_cycle = _find_digraph_cycle(digraph, components)
    if digraph_cycle is not None:
        logger.debug(f"[Shapley] 성분 그래프 순환 - arcs: {digraph_cycle.arcs}")
        return ShapleyClassification(violation=digraph_cycle)

    gamma: Dict[int, Fraction] = {}
    for component in components:
        inconsistent = _propagate_gamma(graph, rule, positive, component, gamma)
        if inconsistent is not None:
            logger.debug(
                f"[Shapley] 비일관 순환 - nodes: {inconsistent.nodes}, alpha(H): {inconsistent.alpha_product}"
            )
            return ShapleyClassification(violation=inconsistent)

    sigma = [0] * graph.node_count
    rank = 0
    for comp_index in nx.lexicographical_topological_sort(digraph):
        for node in components[comp_index]:
            sigma[node] = rank
            rank += 1
    certificate = GwsCertificate(
        sigma=tuple(sigma),
        gamma=tuple(gamma[i] for i in range(graph.node_count)),
        components=tuple(components),
    )
    return ShapleyClassification(certificate=certificate)


def verify_certificate(graph: Graph, rule: DistributionRule, certificate: GwsCertificate) -> bool:
    """증명서의 두 조건을 간선마다 정확한 유리수로 재확인"""
    sigma, gamma = certificate.sigma, certificate.gamma
    for edge, (a_uv, a_vu) in zip(graph.edges, rule.shares):
        if a_uv == 0 and not sigma[edge.u] < sigma[edge.v]:
            return False
        if a_vu == 0 and not sigma[edge.v] < sigma[edge.u]:
            return False
        if a_uv > 0 and a_vu > 0:
            if a_uv / (a_uv + a_vu) != gamma[edge.u] / (gamma[edge.u] + gamma[edge.v]):
                return False
    return True
