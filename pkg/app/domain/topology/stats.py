"""
토폴로지 통계와 위상 기반 PoA 상한
"""
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.core.config import settings
from app.domain.game.enums import EdgeFilter
from app.domain.game.models import ClusteringGame, Graph
from app.domain.game.utility import max_disparity
from app.domain.topology.coloring import chromatic_number
from app.domain.topology.density import DensityResult, max_subgraph_density
from app.domain.topology.matching import Matching, maximum_matching


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TopologyOptions:
    """토폴로지 계산 옵션"""
    chromatic: Optional[bool] = None  # None: n ≤ 상한일 때만 계산, True: 반드시 계산, False: 생략
    chromatic_cap: Optional[int] = None


@dataclass(frozen=True)
class TopologyStats:
    """그래프 위상 파라미터 ρ(G), ρ(G[E_c]), Δ(G), χ(G), μ(G)"""
    density: DensityResult
    coord_density: DensityResult
    max_degree: int
    chromatic_number: Optional[int]
    chromatic_coloring: Optional[Tuple[int, ...]]
    matching: Matching

    @property
    def matching_size(self) -> int:
        return len(self.matching)


def compute_topology_stats(graph: Graph, options: Optional[TopologyOptions] = None) -> TopologyStats:
    """
    토폴로지 통계 계산

    Args:
        graph: 그래프
        options: 채색수 계산 여부와 상한

    Returns:
        TopologyStats

    Raises:
        ChromaticCapExceededError: 채색수를 요청했는데 n이 상한을 넘을 때
    """
    options = options or TopologyOptions()
    cap = options.chromatic_cap if options.chromatic_cap is not None else settings.CHROMATIC_CAP

    chi: Optional[int] = None
    coloring: Optional[Tuple[int, ...]] = None
    want_chromatic = options.chromatic if options.chromatic is not None else graph.node_count <= cap
    if want_chromatic:
        result = chromatic_number(graph, cap=cap)
        chi, coloring = result.chromatic_number, result.coloring
    else:
        logger.info(f"[Topology] 채색수 계산 생략 - n: {graph.node_count}, cap: {cap}")

    return TopologyStats(
        density=max_subgraph_density(graph, EdgeFilter.ALL),
        coord_density=max_subgraph_density(graph, EdgeFilter.COORDINATION_ONLY),
        max_degree=graph.max_degree,
        chromatic_number=chi,
        chromatic_coloring=coloring,
        matching=maximum_matching(graph),
    )


class BoundName(str, enum.Enum):
    """위상 기반 PoA 상한 종류"""
    DENSITY = "density"  # 1 + (1 + ᾱ)ρ(G)
    PLANAR = "planar"  # 4 + 3ᾱ
    EQUAL_SPLIT_DENSITY = "equal_split_density"  # 1 + 2ρ(G)
    REFINED_DENSITY = "refined_density"  # 5 + 2ρ(G[E_c])
    DEGREE = "degree"  # 2εΔ(G)


@dataclass(frozen=True)
class BoundRecord:
    """PoA 상한 하나 (가정 불충족 시 NotApplicable)"""
    name: BoundName
    value: Optional[Fraction]
    failed_hypothesis: Optional[str] = None
    lower_companion: Optional[Fraction] = None  # 같은 게임 클래스의 최악 PoA 하한

    @property
    def applicable(self) -> bool:
        return self.failed_hypothesis is None


def _first_failure(checks: List[Tuple[bool, str]]) -> Optional[str]:
    for ok, hypothesis in checks:
        if not ok:
            return hypothesis
    return None


def topological_poa_bounds(
    game: ClusteringGame,
    epsilon: Fraction = Fraction(1),
    k: int = 1,
    density: Optional[DensityResult] = None,
    coord_density: Optional[DensityResult] = None,
) -> Dict[BoundName, BoundRecord]:
    """
    게임이 가정을 만족하는 위상 기반 (ε,k)-PoA 상한 계산

    밀도/평면 상한은 (1,k)-균형(⊆ (1,1)-균형)에 대한 것이므로 ε = 1을 요구한다.

    Returns:
        BoundName → BoundRecord (순서 고정)
    """
    epsilon = Fraction(epsilon)
    rho = density or max_subgraph_density(game.graph, EdgeFilter.ALL)
    rho_c = coord_density or max_subgraph_density(game.graph, EdgeFilter.COORDINATION_ONLY)
    disparity = max_disparity(game.rule)
    finite_disparity = not math.isinf(disparity)
    bounds: Dict[BoundName, BoundRecord] = {}

    def record(name: BoundName, checks: List[Tuple[bool, str]], value) -> None:
        failure = _first_failure(checks)
        bounds[name] = BoundRecord(name, None if failure else value(), failure)

    density_checks = [
        (epsilon == 1, "epsilon = 1"),
        (game.is_symmetric, "symmetric strategy sets"),
        (game.rule.is_positive and finite_disparity, "positive distribution rule"),
    ]
    record(BoundName.DENSITY, density_checks, lambda: 1 + (1 + disparity) * rho.value)
    record(
        BoundName.PLANAR,
        density_checks + [(game.graph.declared_planar, "declared planar graph")],
        lambda: 4 + 3 * disparity,
    )

    equal_split_checks = [
        (epsilon == 1, "epsilon = 1"),
        (game.is_symmetric, "symmetric strategy sets"),
        (game.rule.is_equal_split, "equal-split rule"),
    ]
    record(BoundName.EQUAL_SPLIT_DENSITY, equal_split_checks, lambda: 1 + 2 * rho.value)
    record(BoundName.REFINED_DENSITY, equal_split_checks, lambda: 5 + 2 * rho_c.value)

    degree_checks = [
        (k >= 2, "k >= 2"),
        (game.is_coordination, "coordination edges only"),
        (game.rule.is_equal_split, "equal-split rule"),
        (game.has_zero_preferences, "zero preferences"),
    ]
    failure = _first_failure(degree_checks)
    if failure:
        bounds[BoundName.DEGREE] = BoundRecord(BoundName.DEGREE, None, failure)
    else:
        delta = game.graph.max_degree
        lower = epsilon * max(Fraction(1), Fraction(delta, k - 1) - 1)
        bounds[BoundName.DEGREE] = BoundRecord(BoundName.DEGREE, 2 * epsilon * delta, None, lower)
    return bounds
