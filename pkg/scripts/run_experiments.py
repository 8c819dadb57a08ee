#!/usr/bin/env python
"""
실험 일괄 실행 스크립트
네 가지 Monte Carlo 실험을 기본 예산으로 실행하고 results/에 CSV와 요약 JSON을 남긴다.

    python scripts/run_experiments.py [--quick] [--out results] [--workers 4]
"""
import argparse
import logging
import os
import sys
import time

# 프로젝트 루트를 Python 경로에 추가
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from dotenv import load_dotenv  # noqa: E402

# 환경 변수 로드 (settings 생성 전에)
load_dotenv(os.path.join(project_root, ".env"))

from app.application.services.experiment_service import ExperimentService  # noqa: E402
from app.core.config import settings  # noqa: E402
from app.infrastructure.storage import write_report  # noqa: E402

# 로깅 설정
logging.basicConfig(
    level=logging.DEBUG if settings.DEBUG else logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


def main() -> int:
    parser = argparse.ArgumentParser(description="clustering-games 실험 일괄 실행")
    parser.add_argument("--out", default=settings.EXPERIMENT_OUTPUT_DIR)
    parser.add_argument("--seed", type=int, default=settings.EXPERIMENT_DEFAULT_SEED)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--quick", action="store_true", help="시행 수를 줄인 빠른 실행")
    args = parser.parse_args()

    scale = 10 if args.quick else 1
    service = ExperimentService(workers=args.workers)
    plans = [
        ("sparse-poa (large n)", lambda: service.run_sparse_poa(
            [200, 400, 800], d=2, trials=settings.SPARSE_POA_TRIALS // scale, seed=args.seed)),
        ("dense-poa", lambda: service.run_dense_poa(
            60, d="1/2", c=[8, 16, 24], trials=settings.DENSE_POA_TRIALS // scale, seed=args.seed)),
        ("degree-scaling", lambda: service.run_degree_scaling(
            [1_000, 10_000, 100_000], d=3, trials=settings.DEGREE_SCALING_TRIALS // scale, seed=args.seed)),
        ("common-color", lambda: service.run_common_color(
            [6, 8, 10], d=2, c=3, k=2, trials=settings.COMMON_COLOR_TRIALS // scale, seed=args.seed)),
    ]

    violations = 0
    for label, run in plans:
        started = time.perf_counter()
        logger.info(f"[Experiment] 시작 - {label}")
        try:
            report = run()
        except Exception as e:
            logger.error(f"[Experiment] 실패 - {label}: {str(e)}", exc_info=True)
            return 1
        paths = write_report(report, args.out)
        violations += len(report.bound_violations)
        logger.info(
            f"[Experiment] 완료 - {label}, rows: {len(report.rows)}, "
            f"time: {time.perf_counter() - started:.1f}s, files: {', '.join(str(p) for p in paths.values())}"
        )

    if violations:
        logger.error(f"[Experiment] 상한/하한 위반 {violations}건")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
