"""
실험 보고서 저장
행은 CSV(시행당 한 행), 요약은 JSON. format=json이면 행과 요약을 한 JSON 파일로 쓴다.
"""
import json
import logging
from pathlib import Path
from typing import Dict, Union

import pandas as pd

from app.application.services.experiment_service import ExperimentReport
from app.core.exceptions import InvalidParameterError
from app.presentation.schemas.report import ExperimentSummary


logger = logging.getLogger(__name__)

REPORT_FORMATS = ("csv", "json")


def build_summary(report: ExperimentReport) -> ExperimentSummary:
    return ExperimentSummary(
        name=report.name,
        seed=report.seed,
        group_by=report.group_by,
        params=report.params,
        rows=len(report.rows),
        failures=report.failures,
        violations=len(report.bound_violations),
        summary=report.summary,
    )


def _rows_frame(report: ExperimentReport) -> pd.DataFrame:
    frame = report.to_frame()
    # 64비트 시드가 float으로 바뀌지 않도록 문자열로 저장
    if "seed" in frame.columns:
        frame["seed"] = frame["seed"].astype(str)
    return frame


def write_report(report: ExperimentReport, out_dir: Union[str, Path], fmt: str = "csv") -> Dict[str, Path]:
    """
    보고서 파일 쓰기

    Args:
        report: 실험 결과
        out_dir: 출력 디렉터리 (없으면 생성)
        fmt: "csv"(행 CSV + 요약 JSON) 또는 "json"(단일 JSON)

    Returns:
        {"rows": 경로, "summary": 경로} 또는 {"report": 경로}
    """
    if fmt not in REPORT_FORMATS:
        raise InvalidParameterError(f"지원하지 않는 형식입니다: {fmt}", {"format": fmt})
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = build_summary(report).model_dump()

    if fmt == "csv":
        rows_path = out / f"{report.name}.csv"
        summary_path = out / f"{report.name}_summary.json"
        _rows_frame(report).to_csv(rows_path, index=False)
        summary_path.write_text(json.dumps(summary, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        logger.info(f"[ReportWriter] 보고서 저장 - rows: {rows_path}, summary: {summary_path}")
        return {"rows": rows_path, "summary": summary_path}

    report_path = out / f"{report.name}.json"
    rows = json.loads(_rows_frame(report).to_json(orient="records"))
    report_path.write_text(
        json.dumps({**summary, "rows": rows, "row_count": len(rows)}, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    logger.info(f"[ReportWriter] 보고서 저장 - report: {report_path}")
    return {"report": report_path}


def read_rows(path: Union[str, Path]) -> pd.DataFrame:
    """저장한 행 CSV 읽기 (seed는 문자열 그대로)"""
    return pd.read_csv(path, dtype={"seed": str})
