"""
정확한 채색수 χ(G) (분기 한정, n ≤ CHROMATIC_CAP)
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.core.exceptions import ChromaticCapExceededError, InvalidParameterError
from app.domain.game.models import Graph


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColoringResult:
    """채색수와 proper coloring (색은 1..χ)"""
    chromatic_number: int
    coloring: Tuple[int, ...]


def _saturation_order(adjacency: Sequence[Sequence[int]]) -> List[int]:
    """포화도(이웃 색 수) 최대 우선 순서. 동률은 차수, 노드 id 순"""
    n = len(adjacency)
    colors = [-1] * n
    order: List[int] = []
    for _ in range(n):
        best = max(
            (i for i in range(n) if colors[i] < 0),
            key=lambda i: (
                len({colors[j] for j in adjacency[i] if colors[j] >= 0}),
                len(adjacency[i]),
                -i,
            ),
        )
        taken = {colors[j] for j in adjacency[best]}
        colors[best] = next(c for c in range(n) if c not in taken)
        order.append(best)
    return order


def find_k_coloring(adjacency: Sequence[Sequence[int]], k: int) -> Optional[List[int]]:
    """
    k-coloring 탐색 (0-based 색, 없으면 None)

    새 색은 지금까지 쓴 색 개수 다음 번호만 시도해 색 치환 대칭을 제거한다.
    """
    if k <= 0:
        raise InvalidParameterError(f"색 개수 k는 1 이상이어야 합니다: {k}", {"k": k})
    order = _saturation_order(adjacency)
    coloring = [-1] * len(adjacency)

    def extend(position: int, used: int) -> bool:
        if position == len(order):
            return True
        node = order[position]
        forbidden = {coloring[j] for j in adjacency[node]}
        for color in range(used):
            if color not in forbidden:
                coloring[node] = color
                if extend(position + 1, used):
                    return True
        if used < k:
            coloring[node] = used
            if extend(position + 1, used + 1):
                return True
        coloring[node] = -1
        return False

    return coloring if extend(0, 0) else None


def chromatic_number(graph: Graph, cap: Optional[int] = None) -> ColoringResult:
    """
    채색수와 최적 coloring 계산

    하한은 최대 클리크, 상한은 DSATUR greedy coloring. 하한부터 k를
    늘리며 find_k_coloring으로 판정한다.

    Raises:
        ChromaticCapExceededError: n이 상한을 넘을 때
    """
    limit = cap if cap is not None else settings.CHROMATIC_CAP
    n = graph.node_count
    if n > limit:
        raise ChromaticCapExceededError(
            f"채색수 계산 노드 수 상한 초과: n={n}, cap={limit}",
            {"n": n, "cap": limit},
        )
    if not graph.edges:
        return ColoringResult(1, tuple(1 for _ in range(n)))

    nx_graph = graph.to_networkx()
    _, lower = nx.max_weight_clique(nx_graph, weight=None)
    greedy = nx.coloring.greedy_color(nx_graph, strategy="DSATUR")
    upper = max(greedy.values()) + 1

    adjacency = graph.adjacency
    for k in range(lower, upper):
        found = find_k_coloring(adjacency, k)
        if found is not None:
            logger.debug(f"[Topology] 채색수 계산 완료 - chi: {k}, clique: {lower}, greedy: {upper}")
            return ColoringResult(k, tuple(c + 1 for c in found))
    logger.debug(f"[Topology] 채색수 계산 완료 - chi: {upper} (greedy 최적), clique: {lower}")
    return ColoringResult(upper, tuple(greedy[i] + 1 for i in range(n)))


def is_proper_coloring(graph: Graph, coloring: Sequence[int]) -> bool:
    return all(coloring[e.u] != coloring[e.v] for e in graph.edges)
