"""
공통 스키마
"""
from typing import Optional, Dict, Any
from pydantic import BaseModel, Field, ConfigDict


class ErrorResponse(BaseModel):
    """에러 응답 (CLI는 stderr로 출력)"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "error": True,
                "error_code": "DuplicateEdge",
                "error_message": "간선 2가 간선 0와 중복됩니다: (0, 1)",
                "details": {
                    "edge_index": 2,
                    "first_index": 0,
                    "file": "triangle.json"
                }
            }
        }
    )

    error: bool = Field(True, description="에러 여부")
    error_code: str = Field(..., description="에러 코드")
    error_message: str = Field(..., description="에러 메시지")
    details: Optional[Dict[str, Any]] = Field(None, description="상세 정보 (file, edge_index, node)")
