"""
게임 도메인 Enum 타입 정의
게임 파일의 문자열 값과 동일한 값을 사용해야 함
"""
import enum


class EdgeKind(str, enum.Enum):
    """간선 종류"""
    COORDINATION = "coord"  # 같은 색일 때 만족
    ANTI_COORDINATION = "anti"  # 다른 색일 때 만족


class GameKind(str, enum.Enum):
    """게임 분류 (간선 종류 기준)"""
    COORDINATION = "coordination"
    ANTI_COORDINATION = "anti-coordination"
    MIXED = "mixed"


class EdgeFilter(str, enum.Enum):
    """밀도 계산 시 사용할 간선 집합"""
    ALL = "all"
    COORDINATION_ONLY = "coord"
