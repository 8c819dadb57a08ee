"""
실험 시행 Worker
TrialTask 목록을 실행기에 넘기고 시행별 결과를 시행 순서대로 모은다.
"""
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Any

from app.core.exceptions import ClusteringGameError
from app.domain.execution import TrialResult, TrialTask, create_task_executor


logger = logging.getLogger(__name__)

Row = Dict[str, Any]
TrialFn = Callable[[TrialTask], List[Row]]


def execute_trial(job: Tuple[TrialFn, TrialTask]) -> TrialResult:
    """
    시행 하나 실행 (프로세스 풀에서 pickle 가능한 최상위 함수)

    도메인 예외와 예기치 않은 예외 모두 status="error" 결과로 바꾼다.
    """
    fn, task = job
    started = time.perf_counter()
    try:
        rows = fn(task)
        status, error = "success", None
    except ClusteringGameError as e:
        logger.warning(f"[TrialWorker] 시행 실패 - task_id: {task.task_id}, error: {e.error_code}: {e.message}")
        rows, status, error = [], "error", f"{e.error_code}: {e.message}"
    except Exception as e:
        logger.error(f"[TrialWorker] 시행 중 예기치 않은 오류 - task_id: {task.task_id}: {str(e)}", exc_info=True)
        rows, status, error = [], "error", str(e)
    elapsed = time.perf_counter() - started
    for row in rows:
        row["elapsed"] = round(elapsed, 6)
    return TrialResult(
        task_id=task.task_id,
        trial=task.trial,
        status=status,
        rows=rows,
        error=error,
        execution_time=elapsed,
    )


class TrialWorker:
    """시행 실행 Worker"""

    def __init__(self, workers: Optional[int] = None):
        """
        Args:
            workers: 워커 수 (None이면 settings.EXPERIMENT_WORKERS)
        """
        self.workers = workers

    def run(self, fn: TrialFn, tasks: Sequence[TrialTask]) -> List[TrialResult]:
        """
        모든 시행 실행

        Returns:
            trial 번호 순서의 TrialResult 목록 (완료 순서와 무관)
        """
        if not tasks:
            return []
        experiment = tasks[0].experiment
        logger.info(f"[TrialWorker] 실행 시작 - experiment: {experiment}, trials: {len(tasks)}")
        started = time.perf_counter()
        with create_task_executor(self.workers) as executor:
            results = executor.map(execute_trial, [(fn, task) for task in tasks])
        results.sort(key=lambda result: result.trial)

        failed = [result for result in results if result.status != "success"]
        elapsed = time.perf_counter() - started
        logger.info(
            f"[TrialWorker] 실행 완료 - experiment: {experiment}, trials: {len(results)}, "
            f"failed: {len(failed)}, time: {elapsed:.2f}s"
        )
        for result in failed:
            logger.warning(f"[TrialWorker]   - {result.task_id}: {result.error}")
        return results
