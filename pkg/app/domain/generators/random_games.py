"""
무작위 게임 생성
그래프 위에 가중치, 선호도, 분배 규칙, 간선 종류를 시드 고정으로 뽑는다.
"""
import enum
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.domain.game.builder import make_game
from app.domain.game.enums import EdgeKind
from app.domain.game.models import ClusteringGame, DistributionRule, Graph
from app.domain.generators.rng import Stream, make_rng


logger = logging.getLogger(__name__)


class RuleFamily(str, enum.Enum):
    EQUAL_SPLIT = "equal-split"
    RANDOM_POSITIVE = "random-positive"
    WEIGHTED_SHAPLEY = "weighted-shapley"
    RANDOM_WITH_ZEROS = "random-with-zeros"


class KindMix(str, enum.Enum):
    COORDINATION = "coord"
    ANTI_COORDINATION = "anti"
    MIXED = "mixed"


@dataclass(frozen=True)
class ValueRange:
    """{low, 1/den, 2/den, ..., maximum} 중 균등 추출하는 작은 유리수"""
    maximum: int
    denominator: int = 1
    allow_zero: bool = True

    def sample(self, rng: np.random.Generator) -> Fraction:
        low = 0 if self.allow_zero else 1
        return Fraction(int(rng.integers(low, self.maximum * self.denominator + 1)), self.denominator)

    @classmethod
    def weights(cls) -> "ValueRange":
        return cls(settings.RANDOM_WEIGHT_MAX, settings.RANDOM_WEIGHT_DENOMINATOR, allow_zero=False)

    @classmethod
    def preferences(cls) -> "ValueRange":
        return cls(settings.RANDOM_PREFERENCE_MAX, 1, allow_zero=True)


@dataclass(frozen=True)
class RandomGameOptions:
    """
    무작위 게임 옵션

    weights가 None이면 그래프의 가중치를 그대로 쓰고, preferences가 None이면 선호도는 0이다.
    """
    rule: RuleFamily = RuleFamily.EQUAL_SPLIT
    kinds: KindMix = KindMix.COORDINATION
    weights: Optional[ValueRange] = field(default_factory=ValueRange.weights)
    preferences: Optional[ValueRange] = field(default_factory=ValueRange.preferences)
    share_max: Optional[int] = None
    anti_probability: Optional[float] = None
    strategy_sets: Optional[Tuple[Tuple[int, ...], ...]] = None


def random_rule(graph: Graph, family: RuleFamily, seed: int, share_max: Optional[int] = None) -> DistributionRule:
    """규칙 계열에 따른 무작위 분배 규칙"""
    family = RuleFamily(family)
    top = share_max or settings.RANDOM_SHARE_MAX
    rng = make_rng(seed, Stream.SHARES)
    if family is RuleFamily.EQUAL_SPLIT:
        return DistributionRule.equal_split(graph)
    if family is RuleFamily.WEIGHTED_SHAPLEY:
        gamma = [Fraction(int(rng.integers(1, top + 1))) for _ in range(graph.node_count)]
        return DistributionRule.from_gamma(graph, gamma)

    shares: List[Tuple[Fraction, Fraction]] = []
    for _ in graph.edges:
        a = Fraction(int(rng.integers(1, top + 1)))
        b = Fraction(int(rng.integers(1, top + 1)))
        if family is RuleFamily.RANDOM_WITH_ZEROS:
            # 1/3 확률로 한쪽 비율을 0으로
            roll = int(rng.integers(3))
            if roll == 1:
                a = Fraction(0)
            elif roll == 2:
                b = Fraction(0)
        shares.append((a, b))
    return DistributionRule(tuple(shares))


def random_kinds(graph: Graph, mix: KindMix, seed: int, anti_probability: Optional[float] = None) -> Graph:
    mix = KindMix(mix)
    if mix is KindMix.COORDINATION:
        kinds = [EdgeKind.COORDINATION] * len(graph.edges)
    elif mix is KindMix.ANTI_COORDINATION:
        kinds = [EdgeKind.ANTI_COORDINATION] * len(graph.edges)
    else:
        prob = settings.RANDOM_ANTI_PROBABILITY if anti_probability is None else anti_probability
        rng = make_rng(seed, Stream.KINDS)
        kinds = [
            EdgeKind.ANTI_COORDINATION if rng.random() < prob else EdgeKind.COORDINATION
            for _ in graph.edges
        ]
    edges = tuple(replace(edge, kind=kind) for edge, kind in zip(graph.edges, kinds))
    return Graph(graph.node_count, edges, graph.declared_planar)


def random_game(
    graph: Graph,
    color_count: int,
    options: Optional[RandomGameOptions] = None,
    seed: int = 0,
) -> ClusteringGame:
    """
    시드 고정 무작위 클러스터링 게임

    Args:
        graph: 바탕 그래프 (간선 종류/가중치는 옵션에 따라 다시 뽑음)
        color_count: 색 개수 c
        options: 규칙 계열, 간선 종류 구성, 가중치/선호도 범위
        seed: 시드 (용도별 스트림으로 분리)

    Returns:
        ClusteringGame
    """
    options = options or RandomGameOptions()
    graph = random_kinds(graph, options.kinds, seed, options.anti_probability)

    if options.weights is not None:
        rng = make_rng(seed, Stream.WEIGHTS)
        edges = tuple(replace(edge, weight=options.weights.sample(rng)) for edge in graph.edges)
        graph = Graph(graph.node_count, edges, graph.declared_planar)

    rule = random_rule(graph, options.rule, seed, options.share_max)

    sets = options.strategy_sets
    preferences: Optional[List[Dict[int, Fraction]]] = None
    if options.preferences is not None:
        rng = make_rng(seed, Stream.PREFERENCES)
        preferences = []
        for node in range(graph.node_count):
            colors = sets[node] if sets is not None else range(1, color_count + 1)
            preferences.append({color: options.preferences.sample(rng) for color in colors})

    game = make_game(graph, color_count, rule, sets, preferences)
    logger.debug(
        f"[Generators] 무작위 게임 생성 - n: {game.n}, c: {color_count}, rule: {RuleFamily(options.rule).value}, "
        f"kinds: {KindMix(options.kinds).value}, seed: {seed}"
    )
    return game


def unit_game(
    graph: Graph,
    color_count: int,
    strategy_sets: Optional[Sequence[Sequence[int]]] = None,
    kind: EdgeKind = EdgeKind.COORDINATION,
) -> ClusteringGame:
    """가중치 1, equal-split, 선호도 0인 게임"""
    edges = tuple(replace(edge, kind=kind, weight=Fraction(1)) for edge in graph.edges)
    return make_game(Graph(graph.node_count, edges, graph.declared_planar), color_count, None, strategy_sets)
