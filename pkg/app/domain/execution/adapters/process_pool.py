"""
프로세스 풀 기반 실행기 (CPU 바운드 시행 병렬화)
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence

from app.domain.execution.adapters.base import R, T, TaskExecutor


logger = logging.getLogger(__name__)


class ProcessPoolTaskExecutor(TaskExecutor):
    """프로세스 풀 실행기"""

    def __init__(self, workers: int):
        """
        Args:
            workers: 워커 프로세스 수
        """
        self.workers = workers
        self._pool: Optional[ProcessPoolExecutor] = None

    @property
    def pool(self) -> ProcessPoolExecutor:
        if self._pool is None:
            self._pool = ProcessPoolExecutor(max_workers=self.workers)
            logger.info(f"[Executor] 프로세스 풀 시작 - workers: {self.workers}")
        return self._pool

    def map(self, fn: Callable[[T], R], tasks: Sequence[T]) -> List[R]:
        # executor.map은 입력 순서대로 결과를 돌려준다
        return list(self.pool.map(fn, tasks))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None
            logger.info("[Executor] 프로세스 풀 종료")
