"""
가중 포텐셜 함수
GWS 규칙(모든 γ > 0)에서 u_i(s') − u_i(s) = γ_i·(Φ(s') − Φ(s))
"""
from fractions import Fraction
from typing import Optional, Sequence

from app.core.exceptions import NotWeightedShapleyError
from app.domain.game.builder import validate_profile
from app.domain.game.models import ClusteringGame
from app.domain.shapley.classify import classify_rule


def _check_gamma(game: ClusteringGame, gamma: Sequence[Fraction]) -> None:
    if len(gamma) != game.n:
        raise NotWeightedShapleyError(
            f"γ 길이({len(gamma)})가 노드 수({game.n})와 다릅니다", {"gamma": len(gamma), "n": game.n}
        )
    for node, value in enumerate(gamma):
        if value <= 0:
            raise NotWeightedShapleyError(f"노드 {node}의 γ가 양수가 아닙니다: {value}", {"node": node})
    for index, (edge, (a_uv, a_vu)) in enumerate(zip(game.graph.edges, game.rule.shares)):
        if a_uv * gamma[edge.v] != a_vu * gamma[edge.u]:
            raise NotWeightedShapleyError(
                f"간선 {index}의 분배 비율이 γ와 맞지 않습니다",
                {"edge_index": index, "alpha": [str(a_uv), str(a_vu)]},
            )


def positive_gamma(game: ClusteringGame) -> Optional[tuple]:
    """규칙이 양수 γ의 가중 Shapley 규칙이면 그 γ, 아니면 None"""
    classification = classify_rule(game.graph, game.rule)
    if not classification.is_gws or not game.rule.is_positive:
        return None
    return classification.certificate.gamma


def potential_value(game: ClusteringGame, gamma: Sequence[Fraction], profile: Sequence[int]) -> Fraction:
    """
    Φ(s) = Σ_i q_i(s_i)/γ_i + Σ_{만족된 e={i,j}} w_e/(γ_i+γ_j)

    Raises:
        NotWeightedShapleyError: γ에 0이 있거나 규칙과 맞지 않을 때
    """
    gamma = tuple(Fraction(g) for g in gamma)
    _check_gamma(game, gamma)
    profile = validate_profile(game, profile)
    total = sum((game.preference(i, profile[i]) / gamma[i] for i in range(game.n)), Fraction(0))
    for edge in game.graph.edges:
        if edge.is_satisfied(profile[edge.u], profile[edge.v]):
            total += edge.weight / (gamma[edge.u] + gamma[edge.v])
    return total
