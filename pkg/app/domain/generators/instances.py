"""
하한/타이트성 구성 인스턴스

각 구성은 (게임, 균형 후보 s, 최적 프로필 s*)를 돌려준다.
균형 여부는 가정하지 않고 equilibria 모듈로 검증한다.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from app.core.config import settings
from app.core.exceptions import DegreeTooSmallError, InvalidParameterError, MatchingEmptyError
from app.core.rational import RationalLike, format_rational, parse_rational
from app.domain.game.builder import build_game, make_game
from app.domain.game.enums import EdgeKind
from app.domain.game.models import ClusteringGame, Graph, StrategyProfile
from app.domain.game.utility import social_welfare
from app.domain.generators.random_games import ValueRange, unit_game
from app.domain.generators.rng import Stream, make_rng
from app.domain.topology import chromatic_number, maximum_matching


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructedInstance:
    """구성 결과와 출처 정보 (meta는 게임 파일의 "meta"로 저장)"""
    game: ClusteringGame
    equilibrium: Optional[StrategyProfile] = None
    optimum: Optional[StrategyProfile] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def equilibrium_welfare(self) -> Optional[Fraction]:
        return None if self.equilibrium is None else social_welfare(self.game, self.equilibrium)

    @property
    def optimum_welfare(self) -> Optional[Fraction]:
        return None if self.optimum is None else social_welfare(self.game, self.optimum)

    @property
    def ratio(self) -> Optional[Fraction]:
        """u(s*)/u(s) (u(s) = 0이면 None)"""
        low, high = self.equilibrium_welfare, self.optimum_welfare
        if low is None or high is None or low == 0:
            return None
        return high / low


def _coordination_graph(graph: Graph, weights: Dict[int, Fraction]) -> Graph:
    """모든 간선을 협조 간선으로 바꾸고 지정하지 않은 간선 가중치는 0"""
    edges = tuple(
        replace(edge, kind=EdgeKind.COORDINATION, weight=weights.get(index, Fraction(0)))
        for index, edge in enumerate(graph.edges)
    )
    return Graph(graph.node_count, edges, graph.declared_planar)


def bipartite_tightness_instance(
    l: int, r: int, gamma_l: RationalLike = 1, gamma_r: RationalLike = 1
) -> ConstructedInstance:
    """
    완전 이분 그래프 K_{l,r} 타이트성 인스턴스

    왼쪽 노드 i: {a_i, c_0}, 오른쪽 노드 j: {b_j, c_0}.
    선호도는 왼쪽 γ_l/(γ_l+γ_r), 오른쪽 γ_r/(γ_l+γ_r).
    비율 u(s*)/u(s) = 1 + rl/(l·γ_l/(γ_l+γ_r) + r·γ_r/(γ_l+γ_r))
    """
    g_l, g_r = parse_rational(gamma_l, field="gamma_l"), parse_rational(gamma_r, field="gamma_r")
    if l < 1 or r < 1:
        raise InvalidParameterError(f"l, r은 1 이상이어야 합니다: l={l}, r={r}", {"l": l, "r": r})
    if g_l <= 0 or g_r <= 0:
        raise InvalidParameterError("γ_l, γ_r은 양수여야 합니다", {"gamma_l": str(g_l), "gamma_r": str(g_r)})

    n = l + r
    common = n + 1
    edges = [
        {"u": i, "v": l + j, "kind": EdgeKind.COORDINATION, "w": 1, "alpha": (g_l, g_r)}
        for i in range(l) for j in range(r)
    ]
    sets = [(i + 1, common) for i in range(n)]
    left, right = g_l / (g_l + g_r), g_r / (g_l + g_r)
    preferences = [
        {i + 1: left if i < l else right, common: left if i < l else right}
        for i in range(n)
    ]
    game = build_game(n, common, edges, sets, preferences)
    return ConstructedInstance(
        game=game,
        equilibrium=StrategyProfile(i + 1 for i in range(n)),
        optimum=StrategyProfile([common] * n),
        meta={
            "construction": "bipartite-tightness",
            "l": l, "r": r,
            "gamma_l": format_rational(g_l), "gamma_r": format_rational(g_r),
        },
    )


def density_lb_instance(graph: Graph, subset: Optional[Sequence[int]] = None) -> ConstructedInstance:
    """
    equal-split 협조 게임 하한 인스턴스

    색은 c_0 = 1, S의 k번째 노드에 c_k = k+1. S 노드는 {c_k, c_0}에 선호도 1,
    E[S] 간선 가중치 2, 나머지 0. 비율 = 1 + 2|E[S]|/|S|
    """
    members = sorted(set(subset if subset is not None else range(graph.node_count)))
    if not members:
        raise InvalidParameterError("부분집합 S가 비어 있습니다")
    for node in members:
        if not 0 <= node < graph.node_count:
            raise InvalidParameterError(f"S의 노드 {node}가 범위를 벗어났습니다", {"node": node})

    inside: Set[int] = set(members)
    own_color = {node: pos + 2 for pos, node in enumerate(members)}
    weights = {
        index: Fraction(2)
        for index, edge in enumerate(graph.edges) if edge.u in inside and edge.v in inside
    }
    color_count = len(members) + 1
    preferences = [
        {own_color[node]: 1, 1: 1} if node in inside else {}
        for node in range(graph.node_count)
    ]
    game = make_game(_coordination_graph(graph, weights), color_count, None, None, preferences)
    return ConstructedInstance(
        game=game,
        equilibrium=StrategyProfile(own_color.get(node, 1) for node in range(graph.node_count)),
        optimum=StrategyProfile([1] * graph.node_count),
        meta={"construction": "density-lb", "subset": members},
    )


def embedding_block(n: int, c: int) -> List[int]:
    """처음 ⌈c/4⌉개 노드 (홀수면 하나 더, c ≥ 4n이면 전체)"""
    if c >= 4 * n:
        return list(range(n))
    size = -(-c // 4)
    if size % 2 == 1:
        size += 1
    return list(range(min(size, n)))


def _select_matching_edges(graph: Graph, matching: Sequence[Tuple[int, int]], q: int) -> List[Tuple[int, int]]:
    """|E[V_M]|를 탐욕적으로 키우는 매칭 간선 q개 선택"""
    remaining = list(matching)
    chosen: List[Tuple[int, int]] = []
    covered: Set[int] = set()
    while len(chosen) < q:
        best, best_gain = None, -1
        for pair in remaining:
            gain = sum(
                1 for node in pair for other in graph.neighbors(node)
                if other in covered or other in pair
            )
            if gain > best_gain:
                best, best_gain = pair, gain
        chosen.append(best)
        covered.update(best)
        remaining.remove(best)
    return chosen


def matching_lb_instance(graph: Graph, c: int, block: Optional[Sequence[int]] = None) -> ConstructedInstance:
    """
    조밀 무작위 그래프 하한 인스턴스

    block 안의 최대 매칭에서 q = min(|M|, c)개 간선 e_1..e_q를 골라
    M에 가중치 2, E[V_M] \\ M에 1, 나머지 0. 선호도 0, equal-split, 대칭 c색.
    s: e_i 양 끝점은 색 i, 나머지 노드는 q < c이면 색 q+1, 아니면 색 1.

    Raises:
        MatchingEmptyError: block 안에 간선이 없을 때
    """
    if c < 2:
        raise InvalidParameterError(f"색 개수는 2 이상이어야 합니다: {c}", {"colors": c})
    members = sorted(set(block if block is not None else range(graph.node_count)))
    inside = set(members)
    induced = Graph(
        graph.node_count, tuple(e for e in graph.edges if e.u in inside and e.v in inside)
    )
    matching = maximum_matching(induced)
    if not matching:
        raise MatchingEmptyError("블록 안에 간선이 없어 매칭을 만들 수 없습니다", {"block_size": len(members)})

    q = min(len(matching), c)
    chosen = _select_matching_edges(induced, matching, q)
    covered = {node for pair in chosen for node in pair}
    chosen_keys = set(chosen)
    weights: Dict[int, Fraction] = {}
    for index, edge in enumerate(graph.edges):
        if edge.key in chosen_keys:
            weights[index] = Fraction(2)
        elif edge.u in covered and edge.v in covered:
            weights[index] = Fraction(1)

    game = make_game(_coordination_graph(graph, weights), c)
    filler = q + 1 if q < c else 1
    colors = [filler] * graph.node_count
    for color, (u, v) in enumerate(chosen, start=1):
        colors[u] = colors[v] = color
    induced_count = sum(1 for index in weights)
    logger.debug(f"[Generators] 매칭 하한 구성 - q: {q}, |E[V_M]|: {induced_count}, c: {c}")
    return ConstructedInstance(
        game=game,
        equilibrium=StrategyProfile(colors),
        optimum=StrategyProfile([1] * graph.node_count),
        meta={
            "construction": "matching-lb",
            "c": c,
            "q": q,
            "matching": [list(pair) for pair in chosen],
            "induced_edges": induced_count,
            "block": members,
        },
    )


def matching_lower_bound(instance: ConstructedInstance) -> Fraction:
    """|E[V_M]|/(2q)"""
    return Fraction(instance.meta["induced_edges"], 2 * instance.meta["q"])


def chromatic_lb_instance(graph: Graph, cap: Optional[int] = None) -> ConstructedInstance:
    """
    채색수 임계 인스턴스 (c = χ+1)

    색 i로 칠해진 노드의 전략 집합은 {i, χ+1}. s는 적절한 채색, u(s) = 0, u(s*) = |E|.

    Raises:
        ChromaticCapExceededError: χ > cap
    """
    result = chromatic_number(graph, cap)
    chi = result.chromatic_number
    common = chi + 1
    sets = [(color, common) for color in result.coloring]
    game = unit_game(graph, common, sets)
    return ConstructedInstance(
        game=game,
        equilibrium=StrategyProfile(result.coloring),
        optimum=StrategyProfile([common] * graph.node_count),
        meta={"construction": "chromatic-lb", "chromatic_number": chi},
    )


def restricted_color_instance(graph: Graph, c: int) -> ConstructedInstance:
    """가중치 1, equal-split, 대칭 c색 협조 게임 (c < χ이면 PoA 유한)"""
    game = unit_game(graph, c)
    return ConstructedInstance(
        game=game,
        optimum=StrategyProfile([1] * graph.node_count),
        meta={"construction": "restricted-color", "c": c},
    )


def degree_lb_instance(graph: Graph, epsilon: RationalLike = 1, k: int = 2) -> ConstructedInstance:
    """
    차수 하한 인스턴스 (색 a=1, b=2, c=3)

    최대 차수 노드 i(가장 작은 id)와 가장 작은 id의 이웃 k−1개는 {a, b},
    나머지 노드는 {a, c}. i와 선택 이웃 사이 간선 가중치 1, i의 나머지 간선 ε, 그 외 0.
    s: i와 선택 이웃은 b, 나머지는 c. u(s) = k−1.
    s*는 모두 a이며 모든 가중치를 만족시킨다.

    Raises:
        DegreeTooSmallError: Δ ≤ k−1
    """
    eps = parse_rational(epsilon, field="epsilon")
    if k < 2:
        raise InvalidParameterError(f"k는 2 이상이어야 합니다: {k}", {"k": k})
    if eps < 1:
        raise InvalidParameterError(f"epsilon은 1 이상이어야 합니다: {eps}", {"epsilon": str(eps)})
    delta = graph.max_degree
    if delta <= k - 1:
        raise DegreeTooSmallError(
            f"최대 차수 {delta}가 k−1 = {k - 1}보다 커야 합니다", {"max_degree": delta, "k": k}
        )

    center = min(node for node in range(graph.node_count) if graph.degree(node) == delta)
    chosen = set(graph.neighbors(center)[: k - 1])
    group = chosen | {center}
    weights: Dict[int, Fraction] = {}
    for index in graph.incidence[center]:
        other = graph.edges[index].other(center)
        weights[index] = Fraction(1) if other in chosen else eps

    sets = [(1, 2) if node in group else (1, 3) for node in range(graph.node_count)]
    game = make_game(_coordination_graph(graph, weights), 3, None, sets)
    return ConstructedInstance(
        game=game,
        equilibrium=StrategyProfile(2 if node in group else 3 for node in range(graph.node_count)),
        optimum=StrategyProfile([1] * graph.node_count),
        meta={
            "construction": "degree-lb",
            "epsilon": format_rational(eps),
            "k": k,
            "center": center,
            "chosen": sorted(chosen),
        },
    )


def degree_lower_bound(max_degree: int, epsilon: RationalLike, k: int) -> Fraction:
    """ε(Δ/(k−1) − 1)"""
    eps = parse_rational(epsilon, field="epsilon")
    return eps * (Fraction(max_degree, k - 1) - 1)


def mixed_triangle_instance(c: int = 3, seed: int = 0) -> ConstructedInstance:
    """
    간선 {0,1} 반협조, {1,2} 협조, {2,0} 반협조인 삼각형

    비율, 가중치, 선호도는 시드로 뽑은 양의 유리수. 어떤 값이어도 순수 균형이 존재한다.
    """
    if c < 2:
        raise InvalidParameterError(f"색 개수는 2 이상이어야 합니다: {c}", {"colors": c})
    shares_rng = make_rng(seed, Stream.SHARES)
    weights_rng = make_rng(seed, Stream.WEIGHTS)
    prefs_rng = make_rng(seed, Stream.PREFERENCES)
    weight_range = ValueRange.weights()
    pref_range = ValueRange.preferences()
    share_range = ValueRange(settings.RANDOM_SHARE_MAX, 1, allow_zero=False)

    layout = ((0, 1, EdgeKind.ANTI_COORDINATION), (1, 2, EdgeKind.COORDINATION), (2, 0, EdgeKind.ANTI_COORDINATION))
    edges = [
        {
            "u": u, "v": v, "kind": kind,
            "w": weight_range.sample(weights_rng),
            "alpha": (share_range.sample(shares_rng), share_range.sample(shares_rng)),
        }
        for u, v, kind in layout
    ]
    preferences = [
        {color: pref_range.sample(prefs_rng) for color in range(1, c + 1)} for _ in range(3)
    ]
    game = build_game(3, c, edges, None, preferences)
    return ConstructedInstance(game=game, meta={"construction": "mixed-triangle", "c": c, "seed": seed})
