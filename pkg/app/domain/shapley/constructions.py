"""
GWS가 아닌 규칙에 대한 반례 게임 구성

- build_br_cycle_game: 비일관 순환 → 최선 응답 그래프에 순환이 있는 게임
- build_zero_share_cycle_game: 성분 그래프 순환(0 비율) → 최선 응답 순환 게임
- build_no_pne_game: 협조 순환, c ≥ 3 → 순수 내쉬 균형이 없는 게임
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from app.core.exceptions import (
    InvalidParameterError,
    NoInconsistentCycleError,
    NotCoordinationCycleError,
)
from app.domain.game.builder import build_game, make_game
from app.domain.game.enums import EdgeKind
from app.domain.game.models import ClusteringGame, DistributionRule, Graph
from app.domain.shapley.classify import (
    DigraphCycle,
    InconsistentCycle,
    ShapleyClassification,
    Violation,
    positive_share_graph,
)


logger = logging.getLogger(__name__)

ViolationInput = Union[ShapleyClassification, Violation]


@dataclass(frozen=True)
class CycleWeights:
    """
    순환 H = (v_1..v_h) 위의 가중치

    edges[i]는 v_i와 v_{i+1}을 잇는 간선 인덱스 (앞쪽 간선).
    모든 v_i가 뒤쪽 간선보다 앞쪽 간선에서 엄격히 더 많이 받는다.
    """
    nodes: Tuple[int, ...]
    edges: Tuple[int, ...]
    weights: Tuple[Fraction, ...]
    forward_pay: Tuple[Fraction, ...]
    backward_pay: Tuple[Fraction, ...]
    epsilon: Fraction


def _unwrap(violation: ViolationInput) -> Violation:
    if isinstance(violation, ShapleyClassification):
        if violation.violation is None:
            raise NoInconsistentCycleError("GWS 규칙에는 반례 순환이 없습니다")
        return violation.violation
    return violation


def _cycle_edges(graph: Graph, nodes: Sequence[int]) -> Tuple[int, ...]:
    h = len(nodes)
    indices = []
    for pos in range(h):
        index = graph.edge_index(nodes[pos], nodes[(pos + 1) % h])
        if index is None:
            raise InvalidParameterError(
                f"순환의 노드 {nodes[pos]}-{nodes[(pos + 1) % h]} 사이에 간선이 없습니다",
                {"cycle": list(nodes)},
            )
        indices.append(index)
    return tuple(indices)


def _shares(graph: Graph, rule: DistributionRule, nodes: Sequence[int], edges: Sequence[int]):
    """노드별 (앞쪽 몫 비율 f_i, 뒤쪽 몫 비율 b_i)"""
    h = len(nodes)
    forward = [rule.share_fraction(graph, edges[pos], nodes[pos]) for pos in range(h)]
    backward = [rule.share_fraction(graph, edges[pos - 1], nodes[pos]) for pos in range(h)]
    return forward, backward


def _finish(graph, rule, nodes, edges, base, epsilon) -> CycleWeights:
    forward, backward = _shares(graph, rule, nodes, edges)
    h = len(nodes)
    weights = tuple((1 + epsilon) ** (pos + 1) * base[pos] for pos in range(h))
    return CycleWeights(
        nodes=tuple(nodes),
        edges=tuple(edges),
        weights=weights,
        forward_pay=tuple(forward[pos] * weights[pos] for pos in range(h)),
        backward_pay=tuple(backward[pos] * weights[pos - 1] for pos in range(h)),
        epsilon=epsilon,
    )


def inconsistent_cycle_weights(graph: Graph, rule: DistributionRule, cycle: InconsistentCycle) -> CycleWeights:
    """
    균형 가중치 b_i·w_{i-1} = f_i·w_i (w_1 = 1)에 (1+ε)^i를 곱한다.

    ε는 1에서 시작해 (1+ε)^n·α(H) < 1이 될 때까지 절반으로 줄인다.
    """
    nodes = cycle.nodes
    edges = _cycle_edges(graph, nodes)
    forward, backward = _shares(graph, rule, nodes, edges)
    base = [Fraction(1)]
    for pos in range(1, len(nodes)):
        base.append(backward[pos] * base[-1] / forward[pos])

    epsilon = Fraction(1)
    while (1 + epsilon) ** graph.node_count * cycle.alpha_product >= 1:
        epsilon /= 2
    return _finish(graph, rule, nodes, edges, base, epsilon)


def zero_share_cycle_nodes(graph: Graph, rule: DistributionRule, cycle: DigraphCycle) -> Tuple[int, ...]:
    """
    성분 그래프 순환을 원래 그래프의 단순 순환으로 펼친다.

    0 비율 끝점 i_1에서 시작해 D의 호를 거꾸로 따라간다. 각 성분 안에서는
    양수 비율 최단 경로로 다음 0 비율 간선의 양수 쪽 끝점까지 이동한다.
    """
    positive = positive_share_graph(graph, rule)
    arcs = cycle.arcs
    m = len(arcs)
    nodes: List[int] = []
    for t in [0] + list(range(m - 1, 0, -1)):
        start = arcs[t][0]
        target = arcs[(t - 1) % m][1]
        nodes.extend(nx.shortest_path(positive, start, target))
    return tuple(nodes)


def zero_share_cycle_weights(graph: Graph, rule: DistributionRule, cycle: DigraphCycle) -> CycleWeights:
    """뒤쪽 몫이 0인 노드에서 가중치를 1로 되돌리며 ε = 1로 증가 사슬을 만든다."""
    nodes = zero_share_cycle_nodes(graph, rule, cycle)
    edges = _cycle_edges(graph, nodes)
    forward, backward = _shares(graph, rule, nodes, edges)
    base = [Fraction(1)]
    for pos in range(1, len(nodes)):
        if backward[pos] == 0:
            base.append(Fraction(1))
        else:
            base.append(backward[pos] * base[-1] / forward[pos])
    return _finish(graph, rule, nodes, edges, base, Fraction(1))


def cycle_weights(graph: Graph, rule: DistributionRule, violation: ViolationInput) -> CycleWeights:
    violation = _unwrap(violation)
    if isinstance(violation, InconsistentCycle):
        return inconsistent_cycle_weights(graph, rule, violation)
    return zero_share_cycle_weights(graph, rule, violation)


def _weighted_game(
    graph: Graph,
    rule: DistributionRule,
    plan: CycleWeights,
    color_count: int,
    preferences: Sequence[Dict[int, Fraction]],
) -> ClusteringGame:
    weights = {index: weight for index, weight in zip(plan.edges, plan.weights)}
    edges = tuple(replace(edge, weight=weights.get(index, Fraction(0))) for index, edge in enumerate(graph.edges))
    return make_game(Graph(graph.node_count, edges, graph.declared_planar), color_count, rule, None, preferences)


def _br_cycle_game(graph, rule, plan: CycleWeights, color_count: int) -> ClusteringGame:
    if color_count < 2:
        raise InvalidParameterError(f"색 개수는 2 이상이어야 합니다: {color_count}", {"colors": color_count})
    total = sum(plan.weights, Fraction(0))
    preferences = [{1: total, 2: total} for _ in range(graph.node_count)]
    game = _weighted_game(graph, rule, plan, color_count, preferences)
    logger.info(
        f"[Shapley] 최선 응답 순환 게임 구성 - cycle: {plan.nodes}, epsilon: {plan.epsilon}, K: {total}"
    )
    return game


def build_br_cycle_game(
    graph: Graph, rule: DistributionRule, violation: ViolationInput, color_count: int = 2
) -> ClusteringGame:
    """
    비일관 순환 H로 최선 응답 그래프에 순환이 있는 게임 구성

    H 위의 가중치는 inconsistent_cycle_weights, 나머지 간선 가중치는 0,
    모든 노드의 색 1, 2 선호도는 K = Σw'.

    Raises:
        NoInconsistentCycleError: 위반이 성분 그래프 순환이거나 규칙이 GWS일 때
    """
    violation = _unwrap(violation)
    if not isinstance(violation, InconsistentCycle):
        raise NoInconsistentCycleError(
            "성분 그래프 순환에는 build_zero_share_cycle_game을 사용해야 합니다",
            {"arcs": [list(arc) for arc in violation.arcs]},
        )
    return _br_cycle_game(graph, rule, inconsistent_cycle_weights(graph, rule, violation), color_count)


def build_zero_share_cycle_game(
    graph: Graph, rule: DistributionRule, violation: ViolationInput, color_count: int = 2
) -> ClusteringGame:
    """0 비율 간선이 만드는 성분 그래프 순환(자기 루프 포함)으로 최선 응답 순환 게임 구성"""
    violation = _unwrap(violation)
    if not isinstance(violation, DigraphCycle):
        raise NoInconsistentCycleError(
            "비일관 순환에는 build_br_cycle_game을 사용해야 합니다", {"cycle": list(violation.nodes)}
        )
    return _br_cycle_game(graph, rule, zero_share_cycle_weights(graph, rule, violation), color_count)


def build_violation_game(
    graph: Graph, rule: DistributionRule, violation: ViolationInput, color_count: int = 2
) -> ClusteringGame:
    """위반 종류에 맞는 최선 응답 순환 구성 선택"""
    violation = _unwrap(violation)
    if isinstance(violation, InconsistentCycle):
        return build_br_cycle_game(graph, rule, violation, color_count)
    return build_zero_share_cycle_game(graph, rule, violation, color_count)


def build_no_pne_game(
    graph: Graph, rule: DistributionRule, violation: ViolationInput, color_count: int = 3
) -> ClusteringGame:
    """
    순수 내쉬 균형이 없는 대칭 협조 게임 구성 (c ≥ 3)

    순환 가중치는 최선 응답 순환 구성과 같고, 선호도는 M = Σw' + 1,
    δ = min_i(앞쪽 몫 − 뒤쪽 몫)/2 로 정한다.

    - v_1..v_{h-2}: 색 3에 M+δ, 색 1에 M
    - v_{h-1}: 색 1에 M+δ, 색 2에 M
    - v_h: 색 2에 M+δ, 색 3에 M

    Raises:
        NoInconsistentCycleError: 규칙이 GWS일 때
        NotCoordinationCycleError: 순환에 반협조 간선이 있을 때
    """
    if color_count < 3:
        raise InvalidParameterError(f"색 개수는 3 이상이어야 합니다: {color_count}", {"colors": color_count})
    plan = cycle_weights(graph, rule, violation)
    for index in plan.edges:
        if graph.edges[index].kind is not EdgeKind.COORDINATION:
            raise NotCoordinationCycleError(
                f"순환 간선 {index}가 협조 간선이 아닙니다", {"edge_index": index}
            )

    h = len(plan.nodes)
    big = sum(plan.weights, Fraction(0)) + 1
    delta = min(f - b for f, b in zip(plan.forward_pay, plan.backward_pay)) / 2
    preferences: List[Dict[int, Fraction]] = [{} for _ in range(graph.node_count)]
    for pos, node in enumerate(plan.nodes):
        if pos < h - 2:
            preferences[node] = {3: big + delta, 1: big}
        elif pos == h - 2:
            preferences[node] = {1: big + delta, 2: big}
        else:
            preferences[node] = {2: big + delta, 3: big}
    game = _weighted_game(graph, rule, plan, color_count, preferences)
    logger.info(f"[Shapley] 순수 균형 없는 게임 구성 - cycle: {plan.nodes}, M: {big}, delta: {delta}")
    return game


def anti_triangle_fixture(shares: Optional[Sequence[Tuple[Fraction, Fraction]]] = None) -> ClusteringGame:
    """
    반협조 간선만 있는 삼각형, 선호도 없음, c = 3

    선호도 없이 c ≥ 3이면 최선 응답 순환 구성이 통하지 않는 경우의 기록용 인스턴스.
    기본 비율은 비일관 규칙 (1/2, 1/2, 1/3).
    """
    shares = shares or ((1, 1), (1, 1), (2, 1))
    edges = [
        {"u": u, "v": v, "kind": EdgeKind.ANTI_COORDINATION, "w": 1, "alpha": alpha}
        for (u, v), alpha in zip(((0, 1), (1, 2), (2, 0)), shares)
    ]
    return build_game(3, 3, edges)
