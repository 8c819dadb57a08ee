"""
현재 프로세스에서 순차 실행하는 실행기 (기본값/테스트용)
"""
from typing import Callable, List, Sequence

from app.domain.execution.adapters.base import R, T, TaskExecutor


class SerialExecutor(TaskExecutor):
    """순차 실행기"""

    def map(self, fn: Callable[[T], R], tasks: Sequence[T]) -> List[R]:
        return [fn(task) for task in tasks]
