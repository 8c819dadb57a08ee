"""
실행 모듈
독립 작업(열거 블록, 실험 시행)을 순차 또는 병렬로 실행
"""
from app.domain.execution.factory import create_task_executor
from app.domain.execution.adapters.base import TaskExecutor, TrialResult, TrialTask

__all__ = [
    "create_task_executor",
    "TaskExecutor",
    "TrialResult",
    "TrialTask",
]
