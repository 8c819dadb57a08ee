"""
효용, 사회 후생, 분배 비율 불균형 계산 (정확한 유리수)
"""
import math
from fractions import Fraction
from typing import List, Sequence, Union

from app.domain.game.models import ClusteringGame, DistributionRule


Disparity = Union[Fraction, float]  # float은 math.inf(무한 불균형)만 사용


def utility(game: ClusteringGame, profile: Sequence[int], node: int) -> Fraction:
    """
    플레이어 효용 u_i(s)

    q_i(s_i) + 만족된 인접 간선의 몫 α_ij/(α_ij+α_ji)·w_ij
    """
    total = game.preference(node, profile[node])
    graph = game.graph
    for index in graph.incidence[node]:
        edge = graph.edges[index]
        if edge.is_satisfied(profile[edge.u], profile[edge.v]):
            total += game.payoff(index, node)
    return total


def social_welfare(game: ClusteringGame, profile: Sequence[int]) -> Fraction:
    """사회 후생 u(s) = Σ_i u_i(s)"""
    return sum((utility(game, profile, i) for i in range(game.n)), Fraction(0))


def satisfied_edges(game: ClusteringGame, profile: Sequence[int]) -> List[int]:
    return [
        index for index, edge in enumerate(game.graph.edges)
        if edge.is_satisfied(profile[edge.u], profile[edge.v])
    ]


def welfare_by_decomposition(game: ClusteringGame, profile: Sequence[int]) -> Fraction:
    """Σ q_i(s_i) + 만족된 간선 가중치 합 (몫 효율성 검증용)"""
    total = sum((game.preference(i, profile[i]) for i in range(game.n)), Fraction(0))
    for index in satisfied_edges(game, profile):
        total += game.graph.edges[index].weight
    return total


def max_disparity(rule: DistributionRule) -> Disparity:
    """
    최대 분배 불균형 ᾱ = max_e max{α_uv/α_vu, α_vu/α_uv}

    비율 0인 간선이 있으면 math.inf, 간선이 없으면 1.
    """
    worst = Fraction(1)
    for a_uv, a_vu in rule.shares:
        if a_uv == 0 or a_vu == 0:
            return math.inf
        worst = max(worst, a_uv / a_vu, a_vu / a_uv)
    return worst
