"""
실행기 어댑터 모듈
"""
from app.domain.execution.adapters.base import TaskExecutor, TrialResult, TrialTask
from app.domain.execution.adapters.serial import SerialExecutor
from app.domain.execution.adapters.process_pool import ProcessPoolTaskExecutor

__all__ = [
    "TaskExecutor",
    "TrialResult",
    "TrialTask",
    "SerialExecutor",
    "ProcessPoolTaskExecutor",
]
