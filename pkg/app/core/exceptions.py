"""
도메인 예외 정의
모든 예외는 ErrorResponse 스키마(error_code, error_message, details)로 직렬화됩니다.
"""
from typing import Any, Dict, Optional


class ClusteringGameError(Exception):
    """클러스터링 게임 라이브러리 최상위 예외"""

    error_code: str = "ClusteringGameError"
    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Args:
            message: 사람이 읽을 수 있는 에러 메시지
            details: 위치 정보 등 기계 판독용 상세 정보 (edge_index, node, file)
        """
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        """ErrorResponse 형태의 딕셔너리로 변환"""
        return {
            "error": True,
            "error_code": self.error_code,
            "error_message": self.message,
            "details": self.details or None,
        }


# ===== 입력 검증 (exit 1) =====

class GameValidationError(ClusteringGameError):
    """게임 입력 검증 실패"""
    error_code = "GameValidationError"


class DuplicateEdgeError(GameValidationError):
    error_code = "DuplicateEdge"


class SelfLoopError(GameValidationError):
    error_code = "SelfLoop"


class ZeroShareSumError(GameValidationError):
    error_code = "ZeroShareSum"


class EmptyStrategySetError(GameValidationError):
    error_code = "EmptyStrategySet"


class ColorOutOfRangeError(GameValidationError):
    error_code = "ColorOutOfRange"


class NegativeWeightError(GameValidationError):
    """음수 가중치, 음수 분배 비율, 음수 선호도"""
    error_code = "NegativeWeight"


class NodeOutOfRangeError(GameValidationError):
    error_code = "NodeOutOfRange"


class InvalidRationalError(GameValidationError):
    error_code = "InvalidRational"


class InvalidProfileError(GameValidationError):
    error_code = "InvalidProfile"


class InvalidParameterError(GameValidationError):
    error_code = "InvalidParameter"


class GameFileError(GameValidationError):
    """게임 파일 파싱 실패 (JSON 문법, 스키마 불일치)"""
    error_code = "GameFileError"


# ===== 탐색 상한 초과 (exit 2) =====

class CapExceededError(ClusteringGameError):
    """설정된 탐색 상한 초과"""
    error_code = "CapExceeded"
    exit_code = 2


class SearchSpaceExceededError(CapExceededError):
    error_code = "SearchSpaceExceeded"


class ChromaticCapExceededError(CapExceededError):
    error_code = "ChromaticCapExceeded"


class CoalitionCapExceededError(CapExceededError):
    error_code = "CoalitionCapExceeded"


# ===== 구성(construction) 전제 조건 위반 (exit 1) =====

class ConstructionError(ClusteringGameError):
    """구성 인스턴스의 전제 조건 위반"""
    error_code = "ConstructionError"


class NoInconsistentCycleError(ConstructionError):
    error_code = "NoInconsistentCycle"


class NotWeightedShapleyError(ConstructionError):
    error_code = "NotWeightedShapley"


class NotCoordinationCycleError(ConstructionError):
    error_code = "NotCoordinationCycle"


class MatchingEmptyError(ConstructionError):
    error_code = "MatchingEmpty"


class DegreeTooSmallError(ConstructionError):
    error_code = "DegreeTooSmall"
