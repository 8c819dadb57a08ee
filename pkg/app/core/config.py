"""
환경 설정 모듈
탐색 상한, 난수 게임 범위, 실험 실행 설정을 관리합니다.
"""
from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """애플리케이션 환경 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"  # 알 수 없는 환경 변수는 무시
    )

    # 앱 기본 설정
    APP_NAME: str = "Clustering Games Analyzer"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # 탐색 상한 (초과 시 CLI exit code 2)
    PROFILE_CAP: int = 10_000_000  # 전략 프로필 공간 Π|S_i| 상한
    CHROMATIC_CAP: int = 20  # 채색수 계산 노드 수 상한
    COALITION_CAP: int = 3  # 연합 크기 k 상한
    BR_MAX_STEPS: int = 1_000_000  # 최선 응답 동역학 최대 스텝

    # 검증용 완전 탐색 오라클 상한
    DENSITY_ORACLE_MAX_NODES: int = 16
    MATCHING_ORACLE_MAX_NODES: int = 12

    # 난수 게임 생성 범위 (작은 유리수)
    RANDOM_WEIGHT_MAX: int = 4  # 가중치 분자 최대값 (1..MAX)
    RANDOM_WEIGHT_DENOMINATOR: int = 2  # 가중치 분모 최대값 (1..DEN)
    RANDOM_PREFERENCE_MAX: int = 3  # 선호도 분자 최대값 (0..MAX)
    RANDOM_SHARE_MAX: int = 4  # 분배 비율 최대값 (1..MAX)
    RANDOM_ANTI_PROBABILITY: float = 0.5  # mixed 모드에서 반협조 간선 확률

    # 실험 설정
    EXPERIMENT_WORKERS: int = 1  # 1: 현재 프로세스에서 순차 실행, 2 이상: 프로세스 풀
    EXPERIMENT_OUTPUT_DIR: str = "results"
    EXPERIMENT_DEFAULT_SEED: int = 20190101
    EXACT_POA_MAX_NODES: int = 10  # 정확한 PoA를 계산하는 최대 노드 수
    EXPERIMENT_PROFILE_CAP: int = 200_000  # 시행별 완전 탐색 프로필 공간 상한
    SPARSE_POA_TRIALS: int = 50
    DENSE_POA_TRIALS: int = 100
    DEGREE_SCALING_TRIALS: int = 30
    COMMON_COLOR_TRIALS: int = 300


@lru_cache()
def get_settings() -> Settings:
    """싱글톤 설정 객체 반환"""
    return Settings()


settings = get_settings()
