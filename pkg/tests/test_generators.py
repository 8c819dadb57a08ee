"""
생성기 테스트 (G(n, p), 전략 집합, 무작위 게임, 구성 인스턴스)
"""
from fractions import Fraction
from math import comb

import pytest

from app.core.exceptions import (
    DegreeTooSmallError,
    InvalidParameterError,
    MatchingEmptyError,
)
from app.domain.equilibria import EquilibriumParams, is_epsilon_k_equilibrium
from app.domain.game.models import Graph
from app.domain.generators import (
    CustomSets,
    GnpParams,
    KindMix,
    PairWithCommon,
    RandomGameOptions,
    RuleFamily,
    Stream,
    StrategySetDistribution,
    UniformNonemptySubsets,
    chromatic_lb_instance,
    common_color_frequency,
    degree_lb_instance,
    degree_lower_bound,
    density_lb_instance,
    derive_seed,
    embedding_block,
    gen_gnp,
    make_rng,
    matching_lb_instance,
    matching_lower_bound,
    pair_with_common_sets,
    random_game,
    random_strategy_sets,
    uniform_common_color_probability,
)


class TestRandomStreams:
    """시드 스트림 분리"""

    def test_same_path_same_numbers(self):
        first = make_rng(7, Stream.GRAPH, 1, 2).integers(0, 1000, size=10)
        second = make_rng(7, Stream.GRAPH, 1, 2).integers(0, 1000, size=10)
        assert list(first) == list(second)

    def test_streams_are_independent(self):
        graph = make_rng(7, Stream.GRAPH).integers(0, 2 ** 32, size=4)
        weights = make_rng(7, Stream.WEIGHTS).integers(0, 2 ** 32, size=4)
        assert list(graph) != list(weights)

    def test_derive_seed(self):
        assert derive_seed(1, Stream.TRIALS, 1, 8, 0) == derive_seed(1, Stream.TRIALS, 1, 8, 0)
        assert derive_seed(1, Stream.TRIALS, 1, 8, 0) != derive_seed(1, Stream.TRIALS, 1, 8, 1)
        assert 0 <= derive_seed(99, Stream.TRIALS) < 2 ** 64


class TestGnp:
    """G(n, p) 생성"""

    def test_reproducible(self):
        params = GnpParams.sparse(50, 2, seed=1)
        assert gen_gnp(params) == gen_gnp(params)
        assert gen_gnp(params).edges != gen_gnp(GnpParams.sparse(50, 2, seed=2)).edges

    def test_empty_and_complete(self):
        assert gen_gnp(GnpParams.sparse(10, 0, seed=3)).edges == ()
        complete = gen_gnp(GnpParams.dense(10, 1, seed=3))
        assert len(complete.edges) == comb(10, 2)

    def test_simple_graph(self):
        graph = gen_gnp(GnpParams.dense(30, "1/2", seed=4))
        keys = [edge.key for edge in graph.edges]
        assert len(keys) == len(set(keys))
        assert all(u < v for u, v in keys)

    def test_sparse_probability_clipped(self):
        assert GnpParams.sparse(3, 5).p == 1
        assert GnpParams.sparse(40, 2).p == Fraction(1, 20)

    def test_invalid_params(self):
        with pytest.raises(InvalidParameterError):
            GnpParams.dense(10, 2)
        with pytest.raises(InvalidParameterError):
            GnpParams.sparse(0, 1)

    @pytest.mark.slow
    def test_mean_edge_count(self):
        """E|E| = C(n,2)·p"""
        counts = [len(gen_gnp(GnpParams.sparse(30, 2, seed=s)).edges) for s in range(200)]
        expected = comb(30, 2) * 2 / 30
        assert abs(sum(counts) / len(counts) - expected) < 2


class TestStrategySets:
    """전략 집합 분포"""

    def test_uniform_subsets(self):
        sets = random_strategy_sets(200, 3, UniformNonemptySubsets(3), seed=5)
        assert all(s and set(s) <= {1, 2, 3} and list(s) == sorted(s) for s in sets)
        assert len(set(sets)) == 7
        assert sets == random_strategy_sets(200, 3, UniformNonemptySubsets(3), seed=5)

    def test_common_color_probability(self):
        assert uniform_common_color_probability(1) == 1
        assert uniform_common_color_probability(2) == Fraction(7, 9)
        assert UniformNonemptySubsets(2).claimed_d0 == Fraction(7, 9)

    def test_pair_with_common(self):
        sets = random_strategy_sets(50, 6, PairWithCommon(6), seed=6)
        assert all(len(s) == 2 and s[0] == 1 and 2 <= s[1] <= 6 for s in sets)
        assert common_color_frequency(sets) == 1
        assert PairWithCommon(6).claimed_d0 == 1

    def test_pair_with_common_sets(self):
        sets = pair_with_common_sets(4)
        assert sets == [(1, 2), (1, 3), (1, 4), (1, 5)]
        assert common_color_frequency([(2,), (3,), (2, 3)]) == Fraction(2, 3)

    def test_custom_sets(self):
        dist = CustomSets(3, sets=((1, 2), (3,)), weights=(Fraction(1), Fraction(0)))
        sets = random_strategy_sets(30, 3, dist, seed=7)
        assert set(sets) == {(1, 2)}
        with pytest.raises(InvalidParameterError):
            CustomSets(3, sets=((4,),))

    def test_color_count_mismatch(self):
        with pytest.raises(InvalidParameterError):
            random_strategy_sets(5, 3, UniformNonemptySubsets(4))

    def test_distribution_is_abstract(self):
        with pytest.raises(TypeError):
            StrategySetDistribution(3)

        class SingleColor(StrategySetDistribution):
            def sample(self, rng):
                return (1,)

        assert random_strategy_sets(4, 3, SingleColor(3), seed=1) == [(1,), (1,), (1,), (1,)]
        assert SingleColor(3).claimed_d0 is None


class TestRandomGame:
    """무작위 게임"""

    def test_reproducible(self, petersen):
        options = RandomGameOptions(rule=RuleFamily.RANDOM_POSITIVE, kinds=KindMix.MIXED)
        assert random_game(petersen, 3, options, seed=9) == random_game(petersen, 3, options, seed=9)

    def test_rule_families(self, petersen):
        equal = random_game(petersen, 2, RandomGameOptions(rule=RuleFamily.EQUAL_SPLIT), seed=1)
        assert equal.rule.is_equal_split
        zeros = random_game(petersen, 2, RandomGameOptions(rule=RuleFamily.RANDOM_WITH_ZEROS), seed=1)
        assert all(a + b > 0 for a, b in zeros.rule.shares)

    def test_kinds(self, petersen):
        anti = random_game(petersen, 2, RandomGameOptions(kinds=KindMix.ANTI_COORDINATION), seed=1)
        assert anti.is_anti_coordination
        coord = random_game(petersen, 2, RandomGameOptions(kinds=KindMix.COORDINATION), seed=1)
        assert coord.is_coordination

    def test_preferences_follow_sets(self, triangle):
        sets = ((1,), (1, 2), (2, 3))
        game = random_game(triangle, 3, RandomGameOptions(strategy_sets=sets), seed=2)
        assert game.strategy_sets == sets
        for node, prefs in enumerate(game.preferences):
            assert set(prefs) <= set(sets[node])

    def test_no_preferences(self, triangle):
        game = random_game(triangle, 3, RandomGameOptions(preferences=None), seed=2)
        assert game.has_zero_preferences


class TestInstances:
    """하한/타이트성 구성"""

    def test_density_lb_subset(self, grid3):
        instance = density_lb_instance(grid3, [0, 1, 3, 4])
        assert instance.meta == {"construction": "density-lb", "subset": [0, 1, 3, 4]}
        assert instance.game.color_count == 5
        assert instance.ratio == 1 + 2 * Fraction(4, 4)
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium)

    def test_density_lb_rejects_bad_subset(self, triangle):
        with pytest.raises(InvalidParameterError):
            density_lb_instance(triangle, [])
        with pytest.raises(InvalidParameterError):
            density_lb_instance(triangle, [0, 5])

    @pytest.mark.parametrize(
        "n, c, expected",
        [(60, 8, [0, 1]), (60, 12, [0, 1, 2, 3]), (60, 16, [0, 1, 2, 3]), (2, 8, [0, 1])],
    )
    def test_embedding_block(self, n, c, expected):
        assert embedding_block(n, c) == expected

    @pytest.mark.parametrize("seed", range(3))
    def test_matching_lb(self, seed):
        graph = gen_gnp(GnpParams.dense(24, "1/2", seed=seed))
        instance = matching_lb_instance(graph, 5)
        q, induced = instance.meta["q"], instance.meta["induced_edges"]
        assert q == 5
        assert instance.equilibrium_welfare == 2 * q
        assert instance.ratio == Fraction(induced + q, 2 * q)
        assert instance.ratio >= matching_lower_bound(instance)
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium)

    def test_matching_lb_small_block(self):
        graph = gen_gnp(GnpParams.dense(40, 1, seed=1))
        instance = matching_lb_instance(graph, 16, embedding_block(40, 16))
        assert instance.meta["block"] == [0, 1, 2, 3]
        assert instance.meta["q"] == 2
        assert instance.ratio == Fraction(6 + 2, 4)
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium)

    def test_matching_lb_empty(self):
        with pytest.raises(MatchingEmptyError):
            matching_lb_instance(Graph(4), 3)

    def test_chromatic_lb(self, petersen):
        instance = chromatic_lb_instance(petersen)
        assert instance.meta["chromatic_number"] == 3
        assert instance.game.color_count == 4
        assert instance.optimum_welfare == 15
        assert instance.ratio is None

    @pytest.mark.parametrize("epsilon", [1, 2, "3/2"])
    def test_degree_lb_star(self, star5, epsilon):
        eps = Fraction(epsilon)
        instance = degree_lb_instance(star5, epsilon, k=2)
        assert instance.meta["center"] == 0
        assert instance.meta["chosen"] == [1]
        assert instance.ratio == 1 + 4 * eps
        assert instance.ratio >= degree_lower_bound(5, eps, 2)
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium, EquilibriumParams(eps, 2))

    def test_degree_lb_k3(self, k4):
        instance = degree_lb_instance(k4, 1, k=3)
        assert instance.equilibrium_welfare == 2
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium, EquilibriumParams(1, 3))

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmallError):
            degree_lb_instance(Graph.from_pairs(4, [(0, 1), (2, 3)]), 1, k=2)

    def test_degree_lower_bound(self):
        assert degree_lower_bound(5, 1, 2) == 4
        assert degree_lower_bound(7, 2, 3) == 5
