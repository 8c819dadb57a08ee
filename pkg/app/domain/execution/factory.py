"""
실행기 팩토리
설정에 따라 적절한 실행기 생성
"""
from typing import Optional

from app.core.config import settings
from app.domain.execution.adapters.base import TaskExecutor
from app.domain.execution.adapters.process_pool import ProcessPoolTaskExecutor
from app.domain.execution.adapters.serial import SerialExecutor


def create_task_executor(workers: Optional[int] = None) -> TaskExecutor:
    """
    워커 수에 따라 적절한 실행기 생성

    설정:
    - EXPERIMENT_WORKERS <= 1: 순차 실행기 (기본값)
    - EXPERIMENT_WORKERS >= 2: 프로세스 풀 실행기

    Args:
        workers: 워커 수 (None이면 settings.EXPERIMENT_WORKERS)

    Returns:
        TaskExecutor 인스턴스
    """
    count = workers if workers is not None else settings.EXPERIMENT_WORKERS
    if count <= 1:
        return SerialExecutor()
    return ProcessPoolTaskExecutor(count)
