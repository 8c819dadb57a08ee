"""
Worker 모듈
실험 시행을 순차 또는 프로세스 풀로 실행
"""
from app.application.workers.trial_worker import TrialWorker, execute_trial

__all__ = ["TrialWorker", "execute_trial"]
