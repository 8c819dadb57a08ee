"""
토폴로지 모듈
밀도, 최대 차수, 채색수, 최대 매칭과 위상 기반 PoA 상한
"""
from app.domain.topology.density import DensityResult, max_subgraph_density, max_subgraph_density_bruteforce
from app.domain.topology.coloring import ColoringResult, chromatic_number, find_k_coloring, is_proper_coloring
from app.domain.topology.matching import Matching, is_matching, maximum_matching, maximum_matching_bruteforce
from app.domain.topology.stats import (
    BoundName,
    BoundRecord,
    TopologyOptions,
    TopologyStats,
    compute_topology_stats,
    topological_poa_bounds,
)

__all__ = [
    "DensityResult",
    "max_subgraph_density",
    "max_subgraph_density_bruteforce",
    "ColoringResult",
    "chromatic_number",
    "find_k_coloring",
    "is_proper_coloring",
    "Matching",
    "is_matching",
    "maximum_matching",
    "maximum_matching_bruteforce",
    "BoundName",
    "BoundRecord",
    "TopologyOptions",
    "TopologyStats",
    "compute_topology_stats",
    "topological_poa_bounds",
]
