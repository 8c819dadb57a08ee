"""
게임 코어 모델
그래프, 분배 규칙, 게임 인스턴스, 효용 계산
"""
from app.domain.game.enums import EdgeFilter, EdgeKind, GameKind
from app.domain.game.models import ClusteringGame, DistributionRule, Edge, Graph, StrategyProfile
from app.domain.game.builder import build_game, build_graph, make_game, validate_profile
from app.domain.game.utility import (
    max_disparity,
    satisfied_edges,
    social_welfare,
    utility,
    welfare_by_decomposition,
)
from app.domain.game.payoffs import PayoffTable

__all__ = [
    "EdgeFilter",
    "EdgeKind",
    "GameKind",
    "ClusteringGame",
    "DistributionRule",
    "Edge",
    "Graph",
    "StrategyProfile",
    "build_game",
    "build_graph",
    "make_game",
    "validate_profile",
    "max_disparity",
    "satisfied_edges",
    "social_welfare",
    "utility",
    "welfare_by_decomposition",
    "PayoffTable",
]
