"""
균형 모듈
(ε,k)-균형 판정/열거, 사회 최적, PoA, 최선 응답 동역학
"""
from app.domain.equilibria.models import (
    BrDynamicsResult,
    BrGraphResult,
    BrMove,
    BrOutcome,
    DeviationWitness,
    EquilibriumCheck,
    EquilibriumParams,
    OptimumResult,
    PoAResult,
    PoAStatus,
    SchedulerPolicy,
)
from app.domain.equilibria.search import (
    best_responses,
    connected_coalitions,
    ensure_search_space,
    enumerate_equilibria,
    is_epsilon_k_equilibrium,
    iter_equilibria,
    price_of_anarchy,
    social_optimum,
)
from app.domain.equilibria.dynamics import BrScheduler, br_graph_acyclic, br_step, run_br_dynamics

__all__ = [
    "BrDynamicsResult",
    "BrGraphResult",
    "BrMove",
    "BrOutcome",
    "DeviationWitness",
    "EquilibriumCheck",
    "EquilibriumParams",
    "OptimumResult",
    "PoAResult",
    "PoAStatus",
    "SchedulerPolicy",
    "best_responses",
    "connected_coalitions",
    "ensure_search_space",
    "enumerate_equilibria",
    "is_epsilon_k_equilibrium",
    "iter_equilibria",
    "price_of_anarchy",
    "social_optimum",
    "BrScheduler",
    "br_graph_acyclic",
    "br_step",
    "run_br_dynamics",
]
