"""
작업 실행기 인터페이스 정의
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar


T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class TrialTask:
    """실험 시행 태스크 (experiment id, trial index, 파생 시드로 식별)"""
    experiment: str
    trial: int
    seed: int
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def task_id(self) -> str:
        return f"{self.experiment}:{self.trial}"


@dataclass
class TrialResult:
    """시행 결과"""
    task_id: str
    trial: int
    status: str  # "success", "error"
    rows: List[Dict[str, Any]] = field(default_factory=list)
    error: Optional[str] = None
    execution_time: float = 0.0  # seconds


class TaskExecutor(ABC):
    """작업 실행기 인터페이스"""

    @abstractmethod
    def map(self, fn: Callable[[T], R], tasks: Sequence[T]) -> List[R]:
        """
        모든 태스크 실행

        Args:
            fn: 모듈 최상위 함수 (프로세스 풀에서 pickle 가능해야 함)
            tasks: 입력 목록

        Returns:
            입력 순서와 같은 순서의 결과 목록 (완료 순서와 무관)
        """
        pass

    def close(self) -> None:
        """자원 정리"""

    def __enter__(self) -> "TaskExecutor":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
