"""
CLI 결과 스키마
유리수는 모두 "p/q" 문자열. PoA는 "p/q", "inf", "none" 중 하나.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class BoundSchema(BaseModel):
    """위상 기반 PoA 상한 (bounds 딕셔너리의 값, 키는 상한 이름)"""
    applicable: bool = Field(..., description="가정 충족 여부")
    value: Optional[str] = Field(None, description="상한 값 (p/q)")
    failed_hypothesis: Optional[str] = Field(None, description="충족되지 않은 첫 가정")
    lower_companion: Optional[str] = Field(None, description="같은 게임 클래스의 PoA 하한")


class TopologyReport(BaseModel):
    """analyze 결과"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "n": 10,
                "edges": 15,
                "density": "3/2",
                "density_witness": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
                "coord_density": "3/2",
                "max_degree": 3,
                "chromatic": 3,
                "matching_size": 5,
                "bounds": {"density": {"applicable": True, "value": "4/1"}},
            }
        }
    )

    n: int = Field(..., description="노드 수")
    edges: int = Field(..., description="간선 수")
    density: str = Field(..., description="최대 부분그래프 밀도 ρ(G)")
    density_witness: List[int] = Field(..., description="ρ(G)를 달성하는 노드 부분집합")
    coord_density: str = Field(..., description="협조 간선만의 밀도 ρ(G[E_c])")
    max_degree: int = Field(..., description="최대 차수 Δ(G)")
    chromatic: Optional[int] = Field(None, description="채색수 χ(G) (상한 초과로 생략하면 null)")
    coloring: Optional[List[int]] = Field(None, description="χ(G)색 적절한 채색")
    matching_size: int = Field(..., description="최대 매칭 크기 μ(G)")
    matching: List[List[int]] = Field(..., description="최대 매칭")
    bounds: Dict[str, BoundSchema] = Field(default_factory=dict, description="ε=1, k=1 기준 위상 상한")


class PoAReport(BaseModel):
    """poa 결과"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "poa": "3/1",
                "status": "finite",
                "epsilon": "1/1",
                "k": 1,
                "equilibria": 4,
                "worst_equilibrium": [2, 3, 4],
                "worst_value": "2/1",
                "optimum": [1, 1, 1],
                "optimum_value": "6/1",
                "bounds": {
                    "density": {"applicable": True, "value": "7/1"},
                    "degree": {"applicable": False, "failed_hypothesis": "k >= 2"},
                },
            }
        }
    )

    poa: str = Field(..., description="(ε,k)-PoA: p/q, inf, none")
    status: str = Field(..., description="finite, inf, none")
    epsilon: str = Field(..., description="ε")
    k: int = Field(..., description="연합 크기 k")
    equilibria: int = Field(..., description="(ε,k)-균형 개수")
    worst_equilibrium: Optional[List[int]] = Field(None, description="후생이 가장 낮은 균형")
    worst_value: Optional[str] = Field(None, description="최악 균형 후생")
    optimum: List[int] = Field(..., description="사회 최적 프로필 s*")
    optimum_value: str = Field(..., description="사회 최적 후생 u(s*)")
    bounds: Dict[str, BoundSchema] = Field(default_factory=dict, description="위상 상한 (적용 불가 포함)")


class ViolationWitness(BaseModel):
    """GWS가 아닌 분배 규칙의 위반 증거"""
    kind: str = Field(..., description="digraph-cycle 또는 inconsistent-cycle")
    cycle: Optional[List[int]] = Field(None, description="비일관 순환 노드")
    alpha_product: Optional[str] = Field(None, description="순환의 α(H) (< 1)")
    components: Optional[List[List[int]]] = Field(None, description="순환을 이루는 양의 분배 비율 성분")
    arcs: Optional[List[List[int]]] = Field(None, description="성분 순환의 0 분배 간선 (i, j)")


class ClassifyReport(BaseModel):
    """classify 결과"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "verdict": "violation",
                "witness": {"kind": "inconsistent-cycle", "cycle": [0, 1, 2], "alpha_product": "1/2"},
            }
        }
    )

    verdict: str = Field(..., description="gws 또는 violation")
    sigma: Optional[List[int]] = Field(None, description="노드별 순위 σ")
    gamma: Optional[List[str]] = Field(None, description="노드 가중치 γ")
    order: Optional[List[int]] = Field(None, description="σ 순서의 노드 목록")
    components: Optional[List[List[int]]] = Field(None, description="양의 분배 비율 연결 성분")
    witness: Optional[ViolationWitness] = Field(None, description="위반 증거 (verdict가 violation일 때)")


class BrGraphReport(BaseModel):
    """br-graph 결과"""
    model_config = ConfigDict(
        json_schema_extra={"example": {"acyclic": False, "cycle": [[1, 1, 2], [1, 2, 2], [1, 1, 2]], "explored": 12}}
    )

    acyclic: bool = Field(..., description="최선 응답 그래프에 순환이 없는지")
    cycle: List[List[int]] = Field(default_factory=list, description="순환 (첫 프로필로 끝남)")
    explored: int = Field(..., description="방문한 프로필 수")


class GeneratedReport(BaseModel):
    """gen 결과 요약 (게임 파일은 --out에 저장)"""
    construction: str = Field(..., description="구성 이름")
    n: int = Field(..., description="노드 수")
    edges: int = Field(..., description="간선 수")
    colors: int = Field(..., description="색 개수")
    equilibrium: Optional[List[int]] = Field(None, description="구성된 균형 후보 s")
    optimum: Optional[List[int]] = Field(None, description="최적 프로필 s*")
    ratio: Optional[str] = Field(None, description="u(s*)/u(s)")
    meta: Dict[str, Any] = Field(default_factory=dict, description="구성 파라미터")


class ExperimentSummary(BaseModel):
    """실험 요약 JSON"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "sparse-poa",
                "seed": 20190101,
                "group_by": "n",
                "params": {"n": [8], "d": "2/1", "trials": 50},
                "rows": 50,
                "failures": [],
                "violations": 0,
                "summary": {"8": {"rho_value": {"mean": 0.9, "median": 1.0, "min": 0.5, "max": 1.25, "std": 0.2}}},
            }
        }
    )

    name: str = Field(..., description="실험 이름")
    seed: int = Field(..., description="기준 시드")
    group_by: str = Field(..., description="요약 그룹 열")
    params: Dict[str, Any] = Field(default_factory=dict, description="실험 파라미터")
    rows: int = Field(..., description="행 수")
    failures: List[Dict[str, Any]] = Field(default_factory=list, description="실패한 시행")
    violations: int = Field(0, description="상한/하한 위반 행 수")
    summary: Dict[str, Dict[str, Dict[str, Any]]] = Field(default_factory=dict, description="그룹별 요약 통계")


class BrDynamicsReport(BaseModel):
    """br-graph --start 결과 (최선 응답 동역학)"""
    outcome: str = Field(..., description="converged 또는 cycle")
    steps: int = Field(..., description="이동 횟수")
    scheduler: str = Field(..., description="스케줄링 정책")
    profile: Optional[List[int]] = Field(None, description="수렴한 프로필")
    cycle: List[List[int]] = Field(default_factory=list, description="반복된 프로필 순환")
