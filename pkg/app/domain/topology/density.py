"""
최대 부분그래프 밀도 ρ(G) = max_S |E[S]|/|S| 정확 계산
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.core.exceptions import SearchSpaceExceededError
from app.domain.game.enums import EdgeFilter
from app.domain.game.models import Graph


logger = logging.getLogger(__name__)

_SOURCE = "source"
_SINK = "sink"


@dataclass(frozen=True)
class DensityResult:
    """밀도 값과 그 값을 달성하는 노드 부분집합"""
    value: Fraction
    witness: Tuple[int, ...]


def _denser_subset(edges: Sequence[Tuple[int, int]], density: Fraction) -> Optional[Tuple[int, ...]]:
    """
    |E[S]|/|S| > density 인 S를 찾는다 (없으면 None)

    density = a/b 일 때 b·|E[S]| − a·|S| 를 최대화하는 폐포(closure) 문제를
    최소 컷으로 푼다: source → 간선 노드 (용량 b), 간선 노드 → 양 끝점 (무한),
    끝점 → sink (용량 a). 최대 이익 = |E|·b − 컷 값.
    """
    a, b = density.numerator, density.denominator
    network = nx.DiGraph()
    endpoints = set()
    for index, (u, v) in enumerate(edges):
        edge_node = ("e", index)
        network.add_edge(_SOURCE, edge_node, capacity=b)
        network.add_edge(edge_node, ("v", u))
        network.add_edge(edge_node, ("v", v))
        endpoints.update((u, v))
    for node in endpoints:
        network.add_edge(("v", node), _SINK, capacity=a)

    cut_value, (source_side, _) = nx.minimum_cut(network, _SOURCE, _SINK)
    profit = len(edges) * b - cut_value
    if profit <= 0:
        return None
    return tuple(sorted(
        label[1] for label in source_side
        if isinstance(label, tuple) and label[0] == "v"
    ))


def _induced_count(edges: Sequence[Tuple[int, int]], nodes: Sequence[int]) -> int:
    members = set(nodes)
    return sum(1 for u, v in edges if u in members and v in members)


def max_subgraph_density(graph: Graph, edge_filter: EdgeFilter = EdgeFilter.ALL) -> DensityResult:
    """
    정확한 최대 부분그래프 밀도

    전체 노드 집합의 밀도에서 시작해, 더 밀한 부분집합이 없을 때까지
    최소 컷 판정으로 후보 밀도를 끌어올린다 (매 단계 밀도가 엄격히 증가).

    Args:
        graph: 그래프
        edge_filter: ALL 또는 COORDINATION_ONLY

    Returns:
        DensityResult (간선이 없으면 0과 단일 노드 witness)
    """
    edges = [edge.key for edge in graph.filtered_edges(edge_filter)]
    if not edges:
        return DensityResult(Fraction(0), (0,))

    witness: Tuple[int, ...] = tuple(range(graph.node_count))
    density = Fraction(len(edges), graph.node_count)
    rounds = 0
    while True:
        rounds += 1
        better = _denser_subset(edges, density)
        if better is None:
            break
        witness = better
        density = Fraction(_induced_count(edges, better), len(better))

    logger.debug(
        f"[Topology] 최대 밀도 계산 완료 - filter: {edge_filter.value}, "
        f"rho: {density}, |S|: {len(witness)}, rounds: {rounds}"
    )
    return DensityResult(density, witness)


def max_subgraph_density_bruteforce(
    graph: Graph,
    edge_filter: EdgeFilter = EdgeFilter.ALL,
    max_nodes: Optional[int] = None,
) -> DensityResult:
    """모든 부분집합을 열거하는 검증용 오라클 (n ≤ DENSITY_ORACLE_MAX_NODES)"""
    limit = max_nodes if max_nodes is not None else settings.DENSITY_ORACLE_MAX_NODES
    n = graph.node_count
    if n > limit:
        raise SearchSpaceExceededError(
            f"밀도 오라클은 n ≤ {limit}에서만 사용할 수 있습니다: n={n}",
            {"n": n, "cap": limit},
        )
    edge_masks: List[int] = [(1 << u) | (1 << v) for u, v in (e.key for e in graph.filtered_edges(edge_filter))]
    best = DensityResult(Fraction(0), (0,))
    for mask in range(1, 1 << n):
        count = sum(1 for em in edge_masks if em & mask == em)
        value = Fraction(count, bin(mask).count("1"))
        if value > best.value:
            best = DensityResult(value, tuple(i for i in range(n) if mask >> i & 1))
    return best
