"""
게임 인스턴스 생성 및 검증
원시 입력(딕셔너리/시퀀스)을 검증된 ClusteringGame으로 변환합니다.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from app.core.exceptions import (
    ColorOutOfRangeError,
    DuplicateEdgeError,
    EmptyStrategySetError,
    InvalidParameterError,
    InvalidProfileError,
    NegativeWeightError,
    NodeOutOfRangeError,
    SelfLoopError,
    ZeroShareSumError,
)
from app.core.rational import RationalLike, parse_rational
from app.domain.game.enums import EdgeKind
from app.domain.game.models import ClusteringGame, DistributionRule, Edge, Graph, StrategyProfile


logger = logging.getLogger(__name__)

RawEdge = Union[Edge, Mapping[str, Any]]


def _parse_kind(value: Any, edge_index: int) -> EdgeKind:
    if isinstance(value, EdgeKind):
        return value
    try:
        return EdgeKind(value)
    except ValueError:
        raise InvalidParameterError(
            f"알 수 없는 간선 종류입니다: {value!r}",
            {"edge_index": edge_index, "kind": value},
        )


def build_graph(node_count: int, edges: Sequence[Edge], declared_planar: bool = False) -> Graph:
    """
    그래프 검증 후 생성

    Args:
        node_count: 노드 수 n (양수)
        edges: 간선 목록
        declared_planar: 평면 그래프 선언 여부 (검사하지 않음)

    Returns:
        검증된 Graph
    """
    if node_count < 1:
        raise InvalidParameterError(f"노드 수는 양수여야 합니다: {node_count}", {"n": node_count})

    seen: Dict[Tuple[int, int], int] = {}
    for index, edge in enumerate(edges):
        for node in (edge.u, edge.v):
            if not 0 <= node < node_count:
                raise NodeOutOfRangeError(
                    f"간선 {index}의 노드 {node}가 범위 [0, {node_count})를 벗어났습니다",
                    {"edge_index": index, "node": node},
                )
        if edge.u == edge.v:
            raise SelfLoopError(
                f"간선 {index}는 자기 루프입니다 (노드 {edge.u})",
                {"edge_index": index, "node": edge.u},
            )
        if edge.key in seen:
            raise DuplicateEdgeError(
                f"간선 {index}가 간선 {seen[edge.key]}와 중복됩니다: {edge.key}",
                {"edge_index": index, "first_index": seen[edge.key], "u": edge.u, "v": edge.v},
            )
        if edge.weight < 0:
            raise NegativeWeightError(
                f"간선 {index}의 가중치가 음수입니다: {edge.weight}",
                {"edge_index": index, "weight": str(edge.weight)},
            )
        seen[edge.key] = index

    return Graph(node_count, tuple(edges), declared_planar)


def make_game(
    graph: Graph,
    color_count: int,
    rule: Optional[DistributionRule] = None,
    strategy_sets: Optional[Sequence[Iterable[int]]] = None,
    preferences: Optional[Sequence[Mapping[int, RationalLike]]] = None,
) -> ClusteringGame:
    """
    이미 만들어진 그래프와 규칙으로 게임 생성 (모든 불변식 검증)

    Args:
        graph: 그래프
        color_count: 색 개수 c (2 이상)
        rule: 분배 규칙 (기본값: equal-split)
        strategy_sets: 노드별 전략 집합 (기본값: 대칭 {1..c})
        preferences: 노드별 색 → 선호도 (기본값: 0)

    Returns:
        ClusteringGame
    """
    graph = build_graph(graph.node_count, graph.edges, graph.declared_planar)
    n = graph.node_count
    if color_count < 2:
        raise InvalidParameterError(f"색 개수는 2 이상이어야 합니다: {color_count}", {"colors": color_count})

    rule = rule if rule is not None else DistributionRule.equal_split(graph)
    if len(rule.shares) != len(graph.edges):
        raise InvalidParameterError(
            "분배 비율 개수가 간선 개수와 다릅니다",
            {"shares": len(rule.shares), "edges": len(graph.edges)},
        )
    for index, (a_uv, a_vu) in enumerate(rule.shares):
        if a_uv < 0 or a_vu < 0:
            raise NegativeWeightError(
                f"간선 {index}의 분배 비율이 음수입니다",
                {"edge_index": index, "alpha": [str(a_uv), str(a_vu)]},
            )
        if a_uv + a_vu == 0:
            raise ZeroShareSumError(
                f"간선 {index}의 분배 비율 합이 0입니다",
                {"edge_index": index},
            )

    full = tuple(range(1, color_count + 1))
    if strategy_sets is None:
        sets: Tuple[Tuple[int, ...], ...] = tuple(full for _ in range(n))
    else:
        if len(strategy_sets) != n:
            raise InvalidParameterError(
                f"전략 집합 개수({len(strategy_sets)})가 노드 수({n})와 다릅니다",
                {"strategy_sets": len(strategy_sets), "n": n},
            )
        normalized: List[Tuple[int, ...]] = []
        for node, raw in enumerate(strategy_sets):
            colors = tuple(sorted(set(raw)))
            if not colors:
                raise EmptyStrategySetError(f"노드 {node}의 전략 집합이 비어 있습니다", {"node": node})
            for color in colors:
                if not 1 <= color <= color_count:
                    raise ColorOutOfRangeError(
                        f"노드 {node}의 색 {color}가 범위 [1, {color_count}]를 벗어났습니다",
                        {"node": node, "color": color},
                    )
            normalized.append(full if colors == full else colors)
        sets = tuple(normalized)

    prefs: Tuple[Dict[int, Fraction], ...] = tuple({} for _ in range(n))
    if preferences is not None:
        if len(preferences) != n:
            raise InvalidParameterError(
                f"선호도 개수({len(preferences)})가 노드 수({n})와 다릅니다",
                {"preferences": len(preferences), "n": n},
            )
        parsed: List[Dict[int, Fraction]] = []
        for node, raw_prefs in enumerate(preferences):
            allowed: Set[int] = set(sets[node])
            entry: Dict[int, Fraction] = {}
            for color, raw_value in sorted((int(c), v) for c, v in raw_prefs.items()):
                if color not in allowed:
                    raise ColorOutOfRangeError(
                        f"노드 {node}의 선호도 색 {color}가 전략 집합에 없습니다",
                        {"node": node, "color": color},
                    )
                value = parse_rational(raw_value, field=f"preferences[{node}][{color}]")
                if value < 0:
                    raise NegativeWeightError(
                        f"노드 {node}의 선호도가 음수입니다: {value}",
                        {"node": node, "color": color},
                    )
                if value != 0:
                    entry[color] = value
            parsed.append(entry)
        prefs = tuple(parsed)

    game = ClusteringGame(graph, color_count, sets, rule, prefs)

    if any(edge.kind is EdgeKind.ANTI_COORDINATION for edge in graph.edges):
        singletons = [node for node, s in enumerate(sets) if len(s) == 1]
        if singletons:
            logger.warning(
                f"[GameBuilder] 반협조 간선이 있는 게임에 전략 집합 크기 1인 노드가 있습니다 - nodes: {singletons}"
            )
    return game


def build_game(
    node_count: int,
    color_count: int,
    edges: Sequence[RawEdge],
    strategy_sets: Optional[Sequence[Iterable[int]]] = None,
    preferences: Optional[Sequence[Mapping[Any, RationalLike]]] = None,
    declared_planar: bool = False,
) -> ClusteringGame:
    """
    원시 입력에서 게임 생성

    간선은 Edge 또는 {"u", "v", "kind", "w", "alpha"} 매핑으로 받는다.
    kind 기본값은 "coord", w 기본값은 1, alpha 기본값은 [1, 1].

    Returns:
        검증된 ClusteringGame
    """
    parsed_edges: List[Edge] = []
    shares: List[Tuple[Fraction, Fraction]] = []
    for index, raw in enumerate(edges):
        if isinstance(raw, Edge):
            parsed_edges.append(raw)
            shares.append((Fraction(1), Fraction(1)))
            continue
        kind = _parse_kind(raw.get("kind", EdgeKind.COORDINATION), index)
        weight = parse_rational(raw.get("w", 1), field=f"edges[{index}].w")
        alpha = raw.get("alpha", (1, 1))
        if len(alpha) != 2:
            raise InvalidParameterError(
                f"간선 {index}의 alpha는 두 값이어야 합니다", {"edge_index": index}
            )
        shares.append((
            parse_rational(alpha[0], field=f"edges[{index}].alpha[0]"),
            parse_rational(alpha[1], field=f"edges[{index}].alpha[1]"),
        ))
        parsed_edges.append(Edge(int(raw["u"]), int(raw["v"]), kind, weight))

    graph = build_graph(node_count, parsed_edges, declared_planar)
    parsed_prefs = None
    if preferences is not None:
        parsed_prefs = [{int(color): value for color, value in p.items()} for p in preferences]
    return make_game(graph, color_count, DistributionRule(tuple(shares)), strategy_sets, parsed_prefs)


def validate_profile(game: ClusteringGame, profile: Sequence[int]) -> StrategyProfile:
    """프로필이 게임의 전략 집합에 맞는지 검증"""
    if len(profile) != game.n:
        raise InvalidProfileError(
            f"프로필 길이({len(profile)})가 노드 수({game.n})와 다릅니다",
            {"length": len(profile), "n": game.n},
        )
    for node, color in enumerate(profile):
        if color not in game.strategy_sets[node]:
            raise InvalidProfileError(
                f"노드 {node}의 색 {color}가 전략 집합에 없습니다",
                {"node": node, "color": color},
            )
    return profile if isinstance(profile, StrategyProfile) else StrategyProfile(profile)
