"""
Shapley 모듈
분배 규칙의 일반화 가중 Shapley 분류, 가중 포텐셜, 반례 게임 구성
"""
from app.domain.shapley.classify import (
    DigraphCycle,
    GwsCertificate,
    InconsistentCycle,
    ShapleyClassification,
    Verdict,
    Violation,
    ViolationKind,
    classify_rule,
    cycle_alpha_product,
    positive_share_graph,
    share_components,
    verify_certificate,
)
from app.domain.shapley.potential import positive_gamma, potential_value
from app.domain.shapley.constructions import (
    CycleWeights,
    anti_triangle_fixture,
    build_br_cycle_game,
    build_no_pne_game,
    build_violation_game,
    build_zero_share_cycle_game,
    cycle_weights,
)

__all__ = [
    "DigraphCycle",
    "GwsCertificate",
    "InconsistentCycle",
    "ShapleyClassification",
    "Verdict",
    "Violation",
    "ViolationKind",
    "classify_rule",
    "cycle_alpha_product",
    "positive_share_graph",
    "share_components",
    "verify_certificate",
    "positive_gamma",
    "potential_value",
    "CycleWeights",
    "anti_triangle_fixture",
    "build_br_cycle_game",
    "build_no_pne_game",
    "build_violation_game",
    "build_zero_share_cycle_game",
    "cycle_weights",
]
