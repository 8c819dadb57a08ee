"""
일반 그래프 최대 매칭 μ(G)
"""
from typing import FrozenSet, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.core.exceptions import SearchSpaceExceededError
from app.domain.game.models import Graph


Matching = Tuple[Tuple[int, int], ...]


def maximum_matching(graph: Graph) -> Matching:
    """블로섬 기반 최대 카디널리티 매칭. (u < v) 쌍을 정렬해 반환"""
    pairs = nx.max_weight_matching(graph.to_networkx(), maxcardinality=True)
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


def is_matching(pairs: Sequence[Tuple[int, int]]) -> bool:
    nodes = [node for pair in pairs for node in pair]
    return len(nodes) == len(set(nodes))


def maximum_matching_bruteforce(graph: Graph, max_nodes: Optional[int] = None) -> int:
    """가장 작은 미처리 노드를 매칭하지 않거나 이웃과 매칭하는 모든 분기를 따르는 검증용 오라클"""
    limit = max_nodes if max_nodes is not None else settings.MATCHING_ORACLE_MAX_NODES
    if graph.node_count > limit:
        raise SearchSpaceExceededError(
            f"매칭 오라클은 n ≤ {limit}에서만 사용할 수 있습니다: n={graph.node_count}",
            {"n": graph.node_count, "cap": limit},
        )
    adjacency = graph.adjacency

    def best(free: FrozenSet[int]) -> int:
        if not free:
            return 0
        node = min(free)
        rest = free - {node}
        result = best(rest)
        for other in adjacency[node]:
            if other in rest:
                result = max(result, 1 + best(rest - {other}))
        return result

    return best(frozenset(range(graph.node_count)))
