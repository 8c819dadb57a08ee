"""
클러스터링 게임 도메인 모델
그래프, 분배 규칙, 게임 인스턴스, 전략 프로필
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Dict, Iterable, Optional, Sequence, Tuple

import networkx as nx

from app.domain.game.enums import EdgeFilter, EdgeKind, GameKind


@dataclass(frozen=True)
class Edge:
    """무방향 간선. (u, v) 입력 방향은 분배 비율 (α_uv, α_vu)의 순서를 정함"""
    u: int
    v: int
    kind: EdgeKind = EdgeKind.COORDINATION
    weight: Fraction = Fraction(1)

    @property
    def key(self) -> Tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))

    def other(self, node: int) -> int:
        return self.v if node == self.u else self.u

    def is_satisfied(self, color_u: int, color_v: int) -> bool:
        if self.kind is EdgeKind.COORDINATION:
            return color_u == color_v
        return color_u != color_v


@dataclass(frozen=True)
class Graph:
    """무방향 단순 가중 그래프 (노드 0..n-1)"""
    node_count: int
    edges: Tuple[Edge, ...] = ()
    declared_planar: bool = False

    @classmethod
    def from_pairs(
        cls,
        node_count: int,
        pairs: Iterable[Tuple[int, int]],
        kind: EdgeKind = EdgeKind.COORDINATION,
        weight: Fraction = Fraction(1),
    ) -> "Graph":
        """노드 쌍 목록으로 동일 종류/가중치 그래프 생성 (검증은 build_graph에서)"""
        return cls(node_count, tuple(Edge(u, v, kind, Fraction(weight)) for u, v in pairs))

    @cached_property
    def incidence(self) -> Tuple[Tuple[int, ...], ...]:
        """노드별 인접 간선 인덱스"""
        buckets = [[] for _ in range(self.node_count)]
        for index, edge in enumerate(self.edges):
            buckets[edge.u].append(index)
            buckets[edge.v].append(index)
        return tuple(tuple(bucket) for bucket in buckets)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(sorted(self.edges[e].other(i) for e in self.incidence[i]))
            for i in range(self.node_count)
        )

    @cached_property
    def edge_lookup(self) -> Dict[Tuple[int, int], int]:
        return {edge.key: index for index, edge in enumerate(self.edges)}

    def neighbors(self, node: int) -> Tuple[int, ...]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return len(self.incidence[node])

    @property
    def max_degree(self) -> int:
        return max((len(bucket) for bucket in self.incidence), default=0)

    def edge_index(self, u: int, v: int) -> Optional[int]:
        return self.edge_lookup.get((min(u, v), max(u, v)))

    def filtered_edges(self, edge_filter: EdgeFilter = EdgeFilter.ALL) -> Tuple[Edge, ...]:
        if edge_filter is EdgeFilter.COORDINATION_ONLY:
            return tuple(e for e in self.edges if e.kind is EdgeKind.COORDINATION)
        return self.edges

    def induced_edge_count(self, nodes: Iterable[int], edge_filter: EdgeFilter = EdgeFilter.ALL) -> int:
        members = set(nodes)
        return sum(1 for e in self.filtered_edges(edge_filter) if e.u in members and e.v in members)

    def to_networkx(self, edge_filter: EdgeFilter = EdgeFilter.ALL) -> nx.Graph:
        """networkx 그래프로 변환 (고립 노드 포함)"""
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.node_count))
        nx_graph.add_edges_from(e.key for e in self.filtered_edges(edge_filter))
        return nx_graph


@dataclass(frozen=True)
class DistributionRule:
    """
    간선별 분배 비율

    shares[e] = (α_uv, α_vu), graph.edges[e]의 (u, v) 순서를 따른다.
    """
    shares: Tuple[Tuple[Fraction, Fraction], ...]

    @classmethod
    def equal_split(cls, graph: Graph) -> "DistributionRule":
        return cls(tuple((Fraction(1), Fraction(1)) for _ in graph.edges))

    @classmethod
    def from_gamma(cls, graph: Graph, gamma: Sequence[Fraction]) -> "DistributionRule":
        """가중 Shapley 규칙: α_ij = γ_i"""
        return cls(tuple((Fraction(gamma[e.u]), Fraction(gamma[e.v])) for e in graph.edges))

    def alpha(self, graph: Graph, edge_index: int, node: int) -> Fraction:
        """node 쪽 비율 α_node,other"""
        a_uv, a_vu = self.shares[edge_index]
        return a_uv if graph.edges[edge_index].u == node else a_vu

    def share_fraction(self, graph: Graph, edge_index: int, node: int) -> Fraction:
        """α_ij / (α_ij + α_ji)"""
        a_uv, a_vu = self.shares[edge_index]
        own = a_uv if graph.edges[edge_index].u == node else a_vu
        return own / (a_uv + a_vu)

    @property
    def is_positive(self) -> bool:
        return all(a > 0 and b > 0 for a, b in self.shares)

    @property
    def is_equal_split(self) -> bool:
        return all(a == b for a, b in self.shares)


class StrategyProfile(tuple):
    """전략 프로필: 노드별 선택한 색 (튜플 사전식 순서 = 열거 순서)"""

    def with_choice(self, node: int, color: int) -> "StrategyProfile":
        choices = list(self)
        choices[node] = color
        return StrategyProfile(choices)

    def with_choices(self, assignment: Dict[int, int]) -> "StrategyProfile":
        choices = list(self)
        for node, color in assignment.items():
            choices[node] = color
        return StrategyProfile(choices)


@dataclass(frozen=True)
class ClusteringGame:
    """
    클러스터링 게임 인스턴스 Γ = (G, c, (S_i), α, w, q)

    preferences[i]는 0이 아닌 선호도만 저장하며, 없는 색의 선호도는 0이다.
    """
    graph: Graph
    color_count: int
    strategy_sets: Tuple[Tuple[int, ...], ...]
    rule: DistributionRule
    preferences: Tuple[Dict[int, Fraction], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.graph.node_count

    def preference(self, node: int, color: int) -> Fraction:
        if not self.preferences:
            return Fraction(0)
        return self.preferences[node].get(color, Fraction(0))

    @cached_property
    def payoffs(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        """간선별 (u 몫, v 몫) = 비율 × 가중치"""
        table = []
        for edge, (a_uv, a_vu) in zip(self.graph.edges, self.rule.shares):
            total = a_uv + a_vu
            table.append((a_uv / total * edge.weight, a_vu / total * edge.weight))
        return tuple(table)

    def payoff(self, edge_index: int, node: int) -> Fraction:
        pay_u, pay_v = self.payoffs[edge_index]
        return pay_u if self.graph.edges[edge_index].u == node else pay_v

    def share(self, edge_index: int, node: int) -> Fraction:
        return self.rule.share_fraction(self.graph, edge_index, node)

    @cached_property
    def is_symmetric(self) -> bool:
        full = tuple(range(1, self.color_count + 1))
        return all(s == full for s in self.strategy_sets)

    @cached_property
    def game_kind(self) -> GameKind:
        kinds = {e.kind for e in self.graph.edges}
        if kinds == {EdgeKind.ANTI_COORDINATION}:
            return GameKind.ANTI_COORDINATION
        if len(kinds) == 2:
            return GameKind.MIXED
        return GameKind.COORDINATION

    @property
    def is_coordination(self) -> bool:
        return self.game_kind is GameKind.COORDINATION

    @property
    def is_anti_coordination(self) -> bool:
        return self.game_kind is GameKind.ANTI_COORDINATION

    @property
    def is_mixed(self) -> bool:
        return self.game_kind is GameKind.MIXED

    @cached_property
    def has_zero_preferences(self) -> bool:
        return all(not prefs for prefs in self.preferences)

    @property
    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.graph.edges), Fraction(0))

    @property
    def profile_space_size(self) -> int:
        return prod(len(s) for s in self.strategy_sets)
