"""
토폴로지 통계 테스트 (밀도, 채색수, 매칭, 위상 상한)
"""
from fractions import Fraction

import pytest

from app.core.exceptions import ChromaticCapExceededError, InvalidParameterError, SearchSpaceExceededError
from app.domain.game.builder import make_game
from app.domain.game.enums import EdgeFilter, EdgeKind
from app.domain.game.models import DistributionRule, Edge, Graph
from app.domain.generators import GnpParams, gen_gnp
from app.domain.topology import (
    BoundName,
    TopologyOptions,
    chromatic_number,
    compute_topology_stats,
    find_k_coloring,
    is_matching,
    is_proper_coloring,
    max_subgraph_density,
    max_subgraph_density_bruteforce,
    maximum_matching,
    maximum_matching_bruteforce,
    topological_poa_bounds,
)


class TestDensity:
    """최대 부분그래프 밀도 ρ(G)"""

    @pytest.mark.parametrize(
        "fixture, expected",
        [
            ("triangle", Fraction(1)),
            ("k4", Fraction(3, 2)),
            ("c5", Fraction(1)),
            ("petersen", Fraction(3, 2)),
            ("grid3", Fraction(4, 3)),
            ("star5", Fraction(5, 6)),
        ],
    )
    def test_known_values(self, request, fixture, expected):
        graph = request.getfixturevalue(fixture)
        result = max_subgraph_density(graph)
        assert result.value == expected
        assert graph.induced_edge_count(result.witness) == expected * len(result.witness)

    def test_witness_skips_sparse_part(self):
        """삼각형 + 떨어진 간선 하나: witness는 삼각형"""
        graph = Graph.from_pairs(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
        result = max_subgraph_density(graph)
        assert result.value == 1
        assert result.witness == (0, 1, 2)

    def test_no_edges(self):
        result = max_subgraph_density(Graph(4))
        assert result.value == 0
        assert result.witness == (0,)

    def test_coordination_filter(self, k4):
        """반협조 간선은 ρ(G[E_c])에서 빠진다"""
        edges = tuple(
            Edge(e.u, e.v, EdgeKind.ANTI_COORDINATION if 3 in e.key else EdgeKind.COORDINATION)
            for e in k4.edges
        )
        graph = Graph(4, edges)
        assert max_subgraph_density(graph).value == Fraction(3, 2)
        assert max_subgraph_density(graph, EdgeFilter.COORDINATION_ONLY).value == 1

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_oracle(self, seed):
        graph = gen_gnp(GnpParams.sparse(11, 4, seed=seed))
        for edge_filter in (EdgeFilter.ALL, EdgeFilter.COORDINATION_ONLY):
            fast = max_subgraph_density(graph, edge_filter)
            slow = max_subgraph_density_bruteforce(graph, edge_filter)
            assert fast.value == slow.value

    def test_oracle_cap(self, petersen):
        with pytest.raises(SearchSpaceExceededError):
            max_subgraph_density_bruteforce(petersen, max_nodes=8)


class TestChromaticNumber:
    """채색수 χ(G)"""

    @pytest.mark.parametrize(
        "fixture, expected",
        [("triangle", 3), ("k4", 4), ("c5", 3), ("petersen", 3), ("grid3", 2), ("star5", 2)],
    )
    def test_known_values(self, request, fixture, expected):
        graph = request.getfixturevalue(fixture)
        result = chromatic_number(graph)
        assert result.chromatic_number == expected
        assert is_proper_coloring(graph, result.coloring)
        assert set(result.coloring) == set(range(1, expected + 1))

    def test_edgeless(self):
        result = chromatic_number(Graph(3))
        assert result.chromatic_number == 1
        assert result.coloring == (1, 1, 1)

    def test_cap_exceeded(self, petersen):
        with pytest.raises(ChromaticCapExceededError) as exc:
            chromatic_number(petersen, cap=5)
        assert exc.value.exit_code == 2

    @pytest.mark.parametrize("k", [0, -1])
    def test_k_must_be_positive(self, triangle, k):
        with pytest.raises(InvalidParameterError) as exc:
            find_k_coloring(triangle.adjacency, k)
        assert exc.value.exit_code == 1
        assert exc.value.details["k"] == k

    def test_k_coloring_search(self, triangle):
        assert find_k_coloring(triangle.adjacency, 2) is None
        coloring = find_k_coloring(triangle.adjacency, 3)
        assert sorted(coloring) == [0, 1, 2]


class TestMatching:
    """최대 매칭 μ(G)"""

    @pytest.mark.parametrize(
        "fixture, expected",
        [("triangle", 1), ("k4", 2), ("c5", 2), ("petersen", 5), ("grid3", 4), ("star5", 1)],
    )
    def test_known_values(self, request, fixture, expected):
        graph = request.getfixturevalue(fixture)
        matching = maximum_matching(graph)
        assert len(matching) == expected
        assert is_matching(matching)
        assert all(u < v and graph.edge_index(u, v) is not None for u, v in matching)
        assert list(matching) == sorted(matching)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_oracle(self, seed):
        graph = gen_gnp(GnpParams.sparse(10, 3, seed=seed))
        assert len(maximum_matching(graph)) == maximum_matching_bruteforce(graph)


class TestTopologyStats:
    """compute_topology_stats"""

    def test_petersen(self, petersen):
        stats = compute_topology_stats(petersen)
        assert stats.density.value == Fraction(3, 2)
        assert stats.coord_density.value == Fraction(3, 2)
        assert stats.max_degree == 3
        assert stats.chromatic_number == 3
        assert stats.matching_size == 5

    def test_chromatic_skipped(self, petersen):
        stats = compute_topology_stats(petersen, TopologyOptions(chromatic=False))
        assert stats.chromatic_number is None
        assert stats.chromatic_coloring is None

    def test_chromatic_forced_over_cap(self, petersen):
        with pytest.raises(ChromaticCapExceededError):
            compute_topology_stats(petersen, TopologyOptions(chromatic=True, chromatic_cap=5))


class TestTopologicalBounds:
    """위상 기반 PoA 상한과 가정 확인"""

    def test_equal_split_symmetric(self, petersen):
        bounds = topological_poa_bounds(make_game(petersen, 3))
        assert bounds[BoundName.DENSITY].value == 4
        assert bounds[BoundName.EQUAL_SPLIT_DENSITY].value == 4
        assert bounds[BoundName.REFINED_DENSITY].value == 8
        assert bounds[BoundName.PLANAR].failed_hypothesis == "declared planar graph"
        assert bounds[BoundName.DEGREE].failed_hypothesis == "k >= 2"
        assert not bounds[BoundName.DEGREE].applicable

    def test_planar(self, grid3):
        planar = Graph(grid3.node_count, grid3.edges, declared_planar=True)
        bounds = topological_poa_bounds(make_game(planar, 2))
        assert bounds[BoundName.PLANAR].value == 7

    def test_degree_bound(self, petersen):
        bounds = topological_poa_bounds(make_game(petersen, 3), epsilon=Fraction(2), k=2)
        degree = bounds[BoundName.DEGREE]
        assert degree.value == 12
        assert degree.lower_companion == 4
        assert bounds[BoundName.DENSITY].failed_hypothesis == "epsilon = 1"

    def test_asymmetric_sets(self, triangle):
        game = make_game(triangle, 3, strategy_sets=[[1, 2], [1, 2, 3], [3]])
        bounds = topological_poa_bounds(game)
        assert bounds[BoundName.DENSITY].failed_hypothesis == "symmetric strategy sets"
        assert bounds[BoundName.EQUAL_SPLIT_DENSITY].failed_hypothesis == "symmetric strategy sets"

    def test_zero_share_rule(self, triangle):
        rule = DistributionRule(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))))
        bounds = topological_poa_bounds(make_game(triangle, 2, rule))
        assert bounds[BoundName.DENSITY].failed_hypothesis == "positive distribution rule"
        assert bounds[BoundName.EQUAL_SPLIT_DENSITY].failed_hypothesis == "equal-split rule"

    def test_preferences_block_degree_bound(self, triangle):
        game = make_game(triangle, 2, preferences=[{1: 1}, {}, {}])
        bounds = topological_poa_bounds(game, k=2)
        assert bounds[BoundName.DEGREE].failed_hypothesis == "zero preferences"
