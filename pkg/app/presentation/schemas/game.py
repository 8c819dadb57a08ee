"""
게임 파일 스키마
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt

from app.domain.game.enums import EdgeKind


class EdgeSchema(BaseModel):
    """간선 (w, alpha는 "p/q" 문자열 또는 정수. 파싱은 게임 생성 시 수행)"""
    model_config = ConfigDict(extra="forbid")

    u: StrictInt = Field(..., description="끝점 u")
    v: StrictInt = Field(..., description="끝점 v")
    kind: EdgeKind = Field(EdgeKind.COORDINATION, description="coord 또는 anti")
    w: Any = Field(1, description="가중치")
    alpha: Tuple[Any, Any] = Field((1, 1), description="분배 비율 (α_uv, α_vu)")


class GameFile(BaseModel):
    """게임 파일 (JSON)"""
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "n": 3,
                "colors": 2,
                "edges": [
                    {"u": 0, "v": 1, "kind": "coord", "w": "1/1", "alpha": ["1/1", "1/1"]},
                    {"u": 1, "v": 2, "kind": "anti", "w": "3/2", "alpha": ["1/1", "2/1"]},
                ],
                "preferences": [{"1": "1/1"}, {}, {}],
                "meta": {"construction": "random-game", "seed": 7},
            }
        },
    )

    n: StrictInt = Field(..., description="노드 수")
    colors: StrictInt = Field(..., description="색 개수 c")
    planar: StrictBool = Field(False, description="평면 그래프 선언")
    edges: List[EdgeSchema] = Field(default_factory=list, description="간선 목록 (순서가 간선 인덱스)")
    strategy_sets: Optional[List[List[StrictInt]]] = Field(None, description="노드별 전략 집합 (생략 시 대칭)")
    preferences: Optional[List[Dict[str, Any]]] = Field(None, description="노드별 색 → 선호도 (생략 시 0)")
    meta: Optional[Dict[str, Any]] = Field(None, description="구성 출처 (construction, 파라미터, seed)")
