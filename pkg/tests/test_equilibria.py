"""
균형 판정/열거, 사회 최적, PoA, 최선 응답 동역학 테스트
"""
import math
from dataclasses import replace
from fractions import Fraction
from itertools import product

import pytest

from app.core.exceptions import (
    CoalitionCapExceededError,
    InvalidParameterError,
    SearchSpaceExceededError,
)
from app.domain.equilibria import (
    BrOutcome,
    BrScheduler,
    EquilibriumParams,
    PoAStatus,
    SchedulerPolicy,
    best_responses,
    br_graph_acyclic,
    br_step,
    connected_coalitions,
    enumerate_equilibria,
    is_epsilon_k_equilibrium,
    iter_equilibria,
    price_of_anarchy,
    run_br_dynamics,
    social_optimum,
)
from app.domain.game.builder import build_game, make_game
from app.domain.game.utility import social_welfare, utility
from app.domain.generators import (
    KindMix,
    RandomGameOptions,
    RuleFamily,
    bipartite_tightness_instance,
    chromatic_lb_instance,
    density_lb_instance,
    random_game,
    restricted_color_instance,
)


class TestEquilibriumCheck:
    """(ε,k)-균형 판정"""

    def test_unilateral_deviation(self, triangle):
        game = make_game(triangle, 2)
        assert is_epsilon_k_equilibrium(game, [1, 1, 1])
        check = is_epsilon_k_equilibrium(game, [1, 1, 2])
        assert not check.is_equilibrium
        assert check.witness.coalition == (2,)
        assert check.witness.deviation == (1,)
        assert check.witness.improvement_factors == (math.inf,)

    def test_epsilon_tolerance(self):
        """이득이 ε배를 넘지 않으면 ε-균형"""
        game = build_game(2, 2, [{"u": 0, "v": 1, "w": 2}], preferences=[{2: "3/2"}, {}])
        assert not is_epsilon_k_equilibrium(game, [1, 1], EquilibriumParams(1, 1))
        assert is_epsilon_k_equilibrium(game, [1, 1], EquilibriumParams(Fraction(2), 1))

    def test_coalition_deviation(self):
        """단독 이탈로는 안정하지만 두 노드의 공동 이탈로 둘 다 개선"""
        game = build_game(
            2, 3, [{"u": 0, "v": 1, "w": 1}],
            preferences=[{1: 1, 3: "3/4"}, {2: 1, 3: "3/4"}],
        )
        assert is_epsilon_k_equilibrium(game, [1, 2], EquilibriumParams(1, 1))
        check = is_epsilon_k_equilibrium(game, [1, 2], EquilibriumParams(1, 2))
        assert not check.is_equilibrium
        assert check.witness.coalition == (0, 1)
        assert check.witness.deviation == (3, 3)
        assert check.witness.after == (Fraction(5, 4), Fraction(5, 4))

    def test_connected_coalitions(self, c5):
        game = make_game(c5, 2)
        pairs = [c for c in connected_coalitions(game, 2)]
        assert pairs == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        triples = [c for c in connected_coalitions(game, 3) if len(c) == 3]
        assert len(triples) == 5

    def test_parameter_validation(self, k4):
        game = make_game(k4, 2)
        with pytest.raises(InvalidParameterError):
            EquilibriumParams(Fraction(1, 2), 1)
        with pytest.raises(InvalidParameterError):
            EquilibriumParams(1, 0)
        with pytest.raises(InvalidParameterError):
            is_epsilon_k_equilibrium(game, [1, 1, 1, 1], EquilibriumParams(1, 5))
        with pytest.raises(CoalitionCapExceededError):
            is_epsilon_k_equilibrium(game, [1, 1, 1, 1], EquilibriumParams(1, 4), coalition_cap=3)


class TestEnumeration:
    """사전식 균형 열거와 사회 최적"""

    def test_triangle_equilibria(self, triangle):
        game = make_game(triangle, 2)
        assert list(iter_equilibria(game)) == [(1, 1, 1), (2, 2, 2)]

    def test_parallel_blocks_keep_order(self, grid3):
        game = random_game(grid3, 2, RandomGameOptions(rule=RuleFamily.RANDOM_POSITIVE), seed=3)
        serial = enumerate_equilibria(game, workers=1)
        parallel = enumerate_equilibria(game, workers=2)
        assert serial == parallel
        assert serial == sorted(serial)
        assert serial == list(iter_equilibria(game))

    def test_matches_brute_force(self, c5):
        """가지치기 열거 = 모든 프로필 판정"""
        game = random_game(c5, 3, RandomGameOptions(rule=RuleFamily.RANDOM_POSITIVE), seed=11)
        params = EquilibriumParams(1, 2)
        expected = [p for p in product(*game.strategy_sets) if is_epsilon_k_equilibrium(game, p, params)]
        assert list(iter_equilibria(game, params)) == expected

    def test_social_optimum(self, triangle):
        optimum = social_optimum(make_game(triangle, 2))
        assert optimum.profile == (1, 1, 1)
        assert optimum.value == 3

    def test_cap(self, triangle):
        game = make_game(triangle, 3)
        with pytest.raises(SearchSpaceExceededError) as exc:
            list(iter_equilibria(game, cap=10))
        assert exc.value.details == {"profile_space": 27, "cap": 10}
        with pytest.raises(SearchSpaceExceededError):
            price_of_anarchy(game, cap=26)


class TestPriceOfAnarchy:
    """정확한 PoA와 구성 인스턴스"""

    def test_density_tight_triangle(self, triangle):
        instance = density_lb_instance(triangle)
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium)
        assert instance.ratio == 3
        result = price_of_anarchy(instance.game)
        assert result.status is PoAStatus.FINITE
        assert result.ratio == 3
        assert result.label == "3/1"

    def test_density_tight_k4(self, k4):
        instance = density_lb_instance(k4)
        result = price_of_anarchy(instance.game)
        assert result.ratio == 1 + 2 * Fraction(3, 2)

    def test_bipartite_tightness(self):
        instance = bipartite_tightness_instance(2, 3)
        assert instance.ratio == Fraction(17, 5)
        result = price_of_anarchy(instance.game)
        assert result.ratio == Fraction(17, 5)
        assert result.worst_equilibrium == (1, 2, 3, 4, 5)
        assert result.optimum.value == Fraction(17, 2)

    def test_bipartite_weighted(self):
        instance = bipartite_tightness_instance(2, 3, 2, 1)
        assert instance.ratio == Fraction(25, 7)
        assert price_of_anarchy(instance.game).ratio == Fraction(25, 7)

    @pytest.mark.parametrize("fixture", ["triangle", "c5", "grid3"])
    def test_chromatic_threshold_infinite(self, request, fixture):
        """c = χ+1이면 후생 0인 균형이 있다"""
        graph = request.getfixturevalue(fixture)
        instance = chromatic_lb_instance(graph)
        assert instance.equilibrium_welfare == 0
        assert is_epsilon_k_equilibrium(instance.game, instance.equilibrium)
        result = price_of_anarchy(instance.game)
        assert result.status is PoAStatus.INFINITE
        assert result.label == "inf"
        assert math.isinf(result.comparable())

    def test_restricted_colors_finite(self, triangle):
        """c < χ이면 어떤 균형도 후생이 양수"""
        result = price_of_anarchy(restricted_color_instance(triangle, 2).game)
        assert result.status is PoAStatus.FINITE
        assert result.worst_value > 0

    def test_zero_optimum(self):
        """가중치와 선호도가 모두 0이면 PoA = 1"""
        game = build_game(3, 2, [{"u": 0, "v": 1, "w": 0}, {"u": 1, "v": 2, "w": 0}])
        result = price_of_anarchy(game)
        assert result.ratio == 1
        assert result.equilibrium_count == 8


class TestBrDynamics:
    """최선 응답 동역학"""

    @pytest.fixture
    def potential_game(self, grid3):
        return random_game(grid3, 3, RandomGameOptions(rule=RuleFamily.WEIGHTED_SHAPLEY), seed=5)

    @pytest.mark.parametrize("policy", list(SchedulerPolicy))
    def test_converges_to_equilibrium(self, potential_game, policy):
        result = run_br_dynamics(potential_game, [1] * 9, BrScheduler(policy, seed=7))
        assert result.outcome is BrOutcome.CONVERGED
        assert is_epsilon_k_equilibrium(potential_game, result.profile)
        assert br_step(potential_game, result.profile) is None

    def test_round_robin_cursor(self):
        scheduler = BrScheduler(SchedulerPolicy.ROUND_ROBIN, cursor=1)
        assert scheduler.choose([0, 2], 3) == 2
        assert scheduler.cursor == 0
        assert scheduler.choose([0, 2], 3) == 0
        assert scheduler.cursor == 1

    def test_lowest_improving_id(self):
        scheduler = BrScheduler(SchedulerPolicy.LOWEST_IMPROVING_ID)
        assert scheduler.choose([4, 1, 3], 5) == 1

    def test_seeded_random_reproducible(self):
        first = BrScheduler(SchedulerPolicy.SEEDED_RANDOM, seed=42)
        second = BrScheduler(SchedulerPolicy.SEEDED_RANDOM, seed=42)
        picks = [first.choose([0, 1, 2, 3], 4) for _ in range(20)]
        assert picks == [second.choose([0, 1, 2, 3], 4) for _ in range(20)]
        assert set(picks) <= {0, 1, 2, 3}

    def test_br_step_smallest_best_color(self, triangle):
        game = make_game(triangle, 3)
        move = br_step(game, [2, 3, 1], BrScheduler(SchedulerPolicy.LOWEST_IMPROVING_ID))
        # 0 노드의 최선 응답은 3과 1 (각각 1/2), 가장 작은 색 1
        assert move.player == 0
        assert move.color == 1
        assert move.profile == (1, 3, 1)

    def test_br_graph_acyclic(self, triangle):
        game = random_game(triangle, 3, RandomGameOptions(rule=RuleFamily.WEIGHTED_SHAPLEY), seed=2)
        result = br_graph_acyclic(game)
        assert result.acyclic
        assert result.cycle == ()
        assert result.explored == 27

    def test_best_responses(self, triangle):
        game = make_game(triangle, 3)
        assert best_responses(game, (2, 3, 1), 0) == frozenset({1, 3})
        assert best_responses(game, (1, 1, 1), 2) == frozenset({1})


def _scaled(game, factor):
    """모든 가중치와 선호도에 factor를 곱한 게임"""
    edges = tuple(replace(edge, weight=edge.weight * factor) for edge in game.graph.edges)
    preferences = tuple({color: value * factor for color, value in prefs.items()} for prefs in game.preferences)
    return replace(game, graph=replace(game.graph, edges=edges), preferences=preferences)


@pytest.fixture(params=[("triangle", 3, 0), ("c5", 2, 1), ("k4", 3, 2), ("c5", 3, 3)])
def small_game(request):
    """선호도와 양쪽 종류 간선이 섞인 무작위 게임"""
    name, colors, seed = request.param
    graph = request.getfixturevalue(name)
    options = RandomGameOptions(rule=RuleFamily.RANDOM_POSITIVE, kinds=KindMix.MIXED)
    return random_game(graph, colors, options, seed=seed)


class TestInvariants:
    """스케일 불변성, 균형 집합 단조성, 동역학과 판정의 일관성"""

    @pytest.mark.parametrize("factor", [Fraction(3), Fraction(2, 7)])
    def test_scaling_multiplies_utilities(self, small_game, factor):
        scaled = _scaled(small_game, factor)
        for profile in product(*small_game.strategy_sets):
            assert social_welfare(scaled, profile) == factor * social_welfare(small_game, profile)
            for node in range(small_game.n):
                assert utility(scaled, profile, node) == factor * utility(small_game, profile, node)

    @pytest.mark.parametrize("factor", [Fraction(3), Fraction(2, 7)])
    @pytest.mark.parametrize("eps, k", [(1, 1), (Fraction(3, 2), 1), (1, 2)])
    def test_scale_invariance(self, small_game, factor, eps, k):
        params = EquilibriumParams(eps, k)
        scaled = _scaled(small_game, factor)
        assert enumerate_equilibria(scaled, params) == enumerate_equilibria(small_game, params)

        original, rescaled = price_of_anarchy(small_game, params), price_of_anarchy(scaled, params)
        assert rescaled.status is original.status
        assert rescaled.label == original.label
        assert rescaled.worst_equilibrium == original.worst_equilibrium
        assert rescaled.optimum.value == factor * original.optimum.value

    def test_larger_coalitions_shrink_equilibria(self, small_game):
        sets = [set(enumerate_equilibria(small_game, EquilibriumParams(1, k))) for k in (1, 2, 3)]
        assert sets[1] <= sets[0]
        assert sets[2] <= sets[1]

    @pytest.mark.parametrize("k", [1, 2])
    def test_larger_epsilon_grows_equilibria(self, small_game, k):
        epsilons = [Fraction(1), Fraction(5, 4), Fraction(2), Fraction(4)]
        sets = [set(enumerate_equilibria(small_game, EquilibriumParams(eps, k))) for eps in epsilons]
        for smaller, larger in zip(sets, sets[1:]):
            assert smaller <= larger

    @pytest.mark.parametrize("policy", list(SchedulerPolicy))
    def test_converged_profiles_are_equilibria(self, small_game, policy):
        colors = small_game.strategy_sets[0]
        starts = [
            [colors[0]] * small_game.n,
            [colors[-1]] * small_game.n,
            [colors[i % len(colors)] for i in range(small_game.n)],
        ]
        equilibria = set(enumerate_equilibria(small_game))
        for start in starts:
            result = run_br_dynamics(small_game, start, BrScheduler(policy, seed=3))
            if result.outcome is not BrOutcome.CONVERGED:
                continue
            assert is_epsilon_k_equilibrium(small_game, result.profile, EquilibriumParams(1, 1))
            assert result.profile in equilibria
