"""
생성기 모듈
G(n, p) 그래프, 무작위 게임, 전략 집합 분포, 하한/타이트성 구성 인스턴스
"""
from app.domain.generators.rng import Stream, derive_seed, make_rng
from app.domain.generators.random_graphs import GnpParams, Regime, gen_gnp, gnp_pairs
from app.domain.generators.strategy_sets import (
    CustomSets,
    PairWithCommon,
    StrategySetDistribution,
    UniformNonemptySubsets,
    common_color_frequency,
    pair_with_common_sets,
    random_strategy_sets,
    uniform_common_color_probability,
)
from app.domain.generators.random_games import (
    KindMix,
    RandomGameOptions,
    RuleFamily,
    ValueRange,
    random_game,
    random_kinds,
    random_rule,
    unit_game,
)
from app.domain.generators.instances import (
    ConstructedInstance,
    mixed_triangle_instance,
    bipartite_tightness_instance,
    chromatic_lb_instance,
    degree_lb_instance,
    degree_lower_bound,
    density_lb_instance,
    matching_lb_instance,
    matching_lower_bound,
    embedding_block,
    restricted_color_instance,
)

__all__ = [
    "Stream",
    "derive_seed",
    "make_rng",
    "GnpParams",
    "Regime",
    "gen_gnp",
    "gnp_pairs",
    "CustomSets",
    "PairWithCommon",
    "StrategySetDistribution",
    "UniformNonemptySubsets",
    "common_color_frequency",
    "pair_with_common_sets",
    "random_strategy_sets",
    "uniform_common_color_probability",
    "KindMix",
    "RandomGameOptions",
    "RuleFamily",
    "ValueRange",
    "random_game",
    "random_kinds",
    "random_rule",
    "unit_game",
    "ConstructedInstance",
    "mixed_triangle_instance",
    "bipartite_tightness_instance",
    "chromatic_lb_instance",
    "degree_lb_instance",
    "degree_lower_bound",
    "density_lb_instance",
    "matching_lb_instance",
    "matching_lower_bound",
    "embedding_block",
    "restricted_color_instance",
]
