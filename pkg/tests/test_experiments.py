"""
Monte Carlo 실험 서비스, 시행 Worker, 보고서 저장 테스트
"""
import json
import math

import pytest

from app.application.services.experiment_service import (
    COMMON_COLOR_COLUMNS,
    DEGREE_SCALING_COLUMNS,
    DENSE_POA_COLUMNS,
    SPARSE_POA_COLUMNS,
    ExperimentReport,
    ExperimentService,
    summarize,
)
from app.application.workers.trial_worker import TrialWorker, execute_trial
from app.core.exceptions import InvalidParameterError
from app.domain.execution import TrialTask
from app.infrastructure.storage import read_rows, write_report


def _strip(rows):
    """elapsed를 뺀 행 (재현성 비교용)"""
    return [{key: value for key, value in row.items() if key != "elapsed"} for row in rows]


def _trial_or_fail(task: TrialTask):
    if task.trial == 1:
        raise InvalidParameterError("의도한 실패", {"trial": task.trial})
    if task.trial == 2:
        raise ValueError("boom")
    return [{"n": task.params["n"], "trial": task.trial, "seed": task.seed, "value": task.trial * 2, "elapsed": None}]


@pytest.fixture
def service():
    return ExperimentService(workers=1)


class TestTrialWorker:
    """시행 실행과 실패 수집"""

    def test_failures_are_captured(self):
        tasks = [TrialTask("unit/3", trial, seed=100 + trial, params={"n": 3}) for trial in range(4)]
        results = TrialWorker(1).run(_trial_or_fail, tasks)
        assert [r.trial for r in results] == [0, 1, 2, 3]
        assert [r.status for r in results] == ["success", "error", "error", "success"]
        assert results[1].error.startswith("InvalidParameter:")
        assert results[2].error == "boom"
        assert results[3].rows[0]["value"] == 6
        assert results[0].rows[0]["elapsed"] >= 0

    def test_task_id(self):
        result = execute_trial((_trial_or_fail, TrialTask("unit/3", 0, seed=1, params={"n": 3})))
        assert result.task_id == "unit/3:0"
        assert result.status == "success"

    def test_empty(self):
        assert TrialWorker(1).run(_trial_or_fail, []) == []


class TestSummarize:
    """그룹별 요약 통계"""

    def test_bool_and_numeric_columns(self):
        rows = [
            {"n": 5, "trial": 0, "seed": 11, "flag": True, "x": 1.0, "label": "1/1"},
            {"n": 5, "trial": 1, "seed": 12, "flag": False, "x": 3.0, "label": "3/1"},
            {"n": 5, "trial": 2, "seed": 13, "flag": None, "x": None, "label": None},
            {"n": 7, "trial": 0, "seed": 14, "flag": True, "x": math.inf, "label": "inf"},
        ]
        summary = summarize(rows)
        assert set(summary) == {"5", "7"}
        assert summary["5"]["flag"]["mean"] == 0.5
        assert summary["5"]["x"]["mean"] == 2.0
        assert summary["5"]["x"]["median"] == 2.0
        assert summary["7"]["x"]["max"] == "inf"
        assert summary["7"]["x"]["std"] is None
        assert "trial" not in summary["5"]
        assert "seed" not in summary["5"]
        assert "label" not in summary["5"]

    def test_empty(self):
        assert summarize([]) == {}

    def test_bound_violations(self):
        rows = [
            {"n": 1, "trial": 0, "within_bound": True},
            {"n": 1, "trial": 1, "within_bound": False},
            {"n": 1, "trial": 2, "within_bound": None, "meets_lower": False},
        ]
        report = ExperimentReport("unit", 1, {}, rows, summarize(rows))
        assert [row["trial"] for row in report.bound_violations] == [1, 2]


class TestSparsePoa:
    """희소 G(n, d/n) 실험"""

    def test_rows_and_bounds(self, service):
        report = service.run_sparse_poa([6, 8], d=2, trials=3, seed=1, exact_max_nodes=8)
        assert report.name == "sparse-poa"
        assert len(report.rows) == 6
        assert report.failures == []
        assert report.bound_violations == []
        for row in report.rows:
            assert set(row) == set(SPARSE_POA_COLUMNS)
            assert row["bound_value"] == 1 + 2 * row["rho_value"]
            assert row["within_bound"] in (True, None)
            assert row["lb_is_equilibrium"] in (True, None)
        assert set(report.summary) == {"6", "8"}

    def test_large_n_skips_exact(self, service):
        report = service.run_sparse_poa([40], trials=2, seed=2, exact_max_nodes=8)
        assert all(row["poa"] is None for row in report.rows)
        assert all(row["rho"] is not None for row in report.rows)

    def test_reproducible(self, service):
        first = service.run_sparse_poa([7], trials=4, seed=9, exact_max_nodes=7)
        second = service.run_sparse_poa([7], trials=4, seed=9, exact_max_nodes=7)
        assert _strip(first.rows) == _strip(second.rows)
        other = service.run_sparse_poa([7], trials=4, seed=10, exact_max_nodes=7)
        assert [row["seed"] for row in other.rows] != [row["seed"] for row in first.rows]

    def test_summary_matches_rows(self, service):
        report = service.run_sparse_poa([10], trials=5, seed=3, exact_max_nodes=0)
        values = [row["rho_value"] for row in report.rows]
        assert report.summary["10"]["rho_value"]["mean"] == pytest.approx(sum(values) / len(values))
        assert report.summary["10"]["rho_value"]["max"] == max(values)


class TestDensePoa:
    """조밀 G(n, d) 매칭 하한 실험"""

    def test_rows(self, service):
        report = service.run_dense_poa(30, d="1/2", c=[4, 8], trials=2, seed=3)
        assert report.group_by == "c"
        assert set(report.summary) == {"4", "8"}
        assert len(report.rows) == 4
        for row in report.rows:
            assert set(row) == set(DENSE_POA_COLUMNS)
            assert row["is_equilibrium"] is True
            assert row["meets_lower"] is True
            assert row["ratio_over_c"] == pytest.approx(row["ratio_value"] / row["c"])

    def test_invalid_parameters(self, service):
        with pytest.raises(InvalidParameterError):
            service.run_dense_poa(10, c=11, trials=1)
        with pytest.raises(InvalidParameterError):
            service.run_dense_poa(10, c=1, trials=1)
        with pytest.raises(InvalidParameterError):
            service.run_dense_poa(10, c=4, trials=1, block="half")

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        serial = ExperimentService(workers=1).run_dense_poa(20, c=4, trials=3, seed=8)
        parallel = ExperimentService(workers=2).run_dense_poa(20, c=4, trials=3, seed=8)
        assert _strip(serial.rows) == _strip(parallel.rows)


class TestDegreeScaling:
    """최대 차수 실험"""

    def test_rows(self, service):
        report = service.run_degree_scaling([7, 300], d=3, trials=2, seed=4, small_max_nodes=7)
        assert report.bound_violations == []
        for row in report.rows:
            assert set(row) == set(DEGREE_SCALING_COLUMNS)
            assert row["upper_bound"] == f"{2 * row['max_degree']}/1"
        small = [row for row in report.rows if row["n"] == 7]
        large = [row for row in report.rows if row["n"] == 300]
        assert all(row["poa"] is not None for row in small)
        assert all(row["poa"] is None for row in large)
        assert all(row["scaled_degree"] > 0 for row in large)
        for row in small:
            if row["max_degree"] > 1:
                assert row["lb_is_equilibrium"] is True
                assert row["lb_meets_lower"] is True


class TestCommonColor:
    """공통 색 실험"""

    def test_uniform_sets(self, service):
        report = service.run_common_color([5], d=2, c=3, k=2, trials=4, seed=5)
        for row in report.rows:
            assert set(row) == set(COMMON_COLOR_COLUMNS)
            assert row["claimed_d0"] == pytest.approx(37 / 49)
            if row["local_pairs"]:
                assert row["local_violations"] == 0

    def test_pair_with_common(self, service):
        report = service.run_common_color([4], dist="pair-with-common", k=1, trials=3, seed=6)
        for row in report.rows:
            assert row["c"] == 5
            assert row["common_frequency"] == 1.0
            assert row["local_pairs"] is None
            if row["edges"]:
                assert row["private_ratio"] is not None

    def test_run_by_name(self, service):
        report = service.run("common-color", n_list=[4], trials=1, seed=1)
        assert report.name == "common-color"
        assert report.params["n"] == [4]


class TestReportWriter:
    """보고서 파일"""

    def test_csv_and_summary(self, service, tmp_path):
        report = service.run_sparse_poa([6], trials=3, seed=7, exact_max_nodes=6)
        paths = write_report(report, tmp_path / "out")
        frame = read_rows(paths["rows"])
        assert len(frame) == 3
        assert list(frame["seed"]) == [str(row["seed"]) for row in report.rows]
        summary = json.loads(paths["summary"].read_text(encoding="utf-8"))
        assert summary["name"] == "sparse-poa"
        assert summary["rows"] == 3
        assert summary["violations"] == 0
        assert summary["summary"] == json.loads(json.dumps(report.summary))

    def test_json_format(self, service, tmp_path):
        report = service.run_common_color([4], trials=2, seed=8)
        paths = write_report(report, tmp_path, fmt="json")
        document = json.loads(paths["report"].read_text(encoding="utf-8"))
        assert document["row_count"] == 2
        assert len(document["rows"]) == 2
        assert document["group_by"] == "n"

    def test_unknown_format(self, service, tmp_path):
        report = ExperimentReport("unit", 1, {}, [], {})
        with pytest.raises(InvalidParameterError):
            write_report(report, tmp_path, fmt="xlsx")
