"""
CLI 테스트 (stdout JSON, stderr ErrorResponse, exit code)
"""
import json

import pytest

from app.domain.game.builder import build_game, make_game
from app.infrastructure.storage import GameRepository
from app.presentation.cli.main import main


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def _error_json(capsys):
    """stderr의 마지막 JSON 줄 (로그 줄은 건너뜀)"""
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


@pytest.fixture
def bipartite_file(tmp_path, capsys):
    path = tmp_path / "k23.json"
    code = main(["gen", "--construction", "bipartite-tightness", "--l", "2", "--r", "3", "--out", str(path)])
    assert code == 0
    report = _stdout_json(capsys)
    assert report["ratio"] == "17/5"
    assert report["meta"]["construction"] == "bipartite-tightness"
    return path


@pytest.fixture
def petersen_file(tmp_path, petersen):
    return GameRepository().save(make_game(petersen, 3), tmp_path / "petersen.json")


@pytest.fixture
def inconsistent_file(tmp_path):
    """비율 (1,1), (1,1), (2,1)인 협조 삼각형"""
    edges = [
        {"u": u, "v": v, "alpha": alpha}
        for (u, v), alpha in zip(((0, 1), (1, 2), (2, 0)), ((1, 1), (1, 1), (2, 1)))
    ]
    return GameRepository().save(build_game(3, 2, edges), tmp_path / "inconsistent.json")


class TestCommands:
    """명령별 출력"""

    def test_poa(self, bipartite_file, capsys):
        assert main(["poa", "--game", str(bipartite_file)]) == 0
        report = _stdout_json(capsys)
        assert report["poa"] == "17/5"
        assert report["status"] == "finite"
        assert report["worst_equilibrium"] == [1, 2, 3, 4, 5]
        assert isinstance(report["optimum"], list)
        assert len(report["optimum"]) == 5
        assert report["optimum_value"] == "17/2"

    def test_poa_bounds_keyed_by_name(self, bipartite_file, capsys):
        assert main(["poa", "--game", str(bipartite_file)]) == 0
        bounds = _stdout_json(capsys)["bounds"]
        assert set(bounds) == {"density", "planar", "equal_split_density", "refined_density", "degree"}
        assert bounds["degree"]["applicable"] is False
        assert bounds["degree"]["failed_hypothesis"] == "k >= 2"
        assert bounds["degree"]["value"] is None
        assert bounds["planar"]["applicable"] is False
        assert bounds["planar"]["failed_hypothesis"] is not None

    def test_classify(self, bipartite_file, capsys):
        assert main(["classify", "--game", str(bipartite_file)]) == 0
        report = _stdout_json(capsys)
        assert report["verdict"] == "gws"
        assert len(report["gamma"]) == 5
        assert len(report["sigma"]) == 5
        assert report["witness"] is None

    def test_classify_inconsistent_witness(self, inconsistent_file, capsys):
        assert main(["classify", "--game", str(inconsistent_file)]) == 0
        report = _stdout_json(capsys)
        assert report["verdict"] == "violation"
        assert report["gamma"] is None
        witness = report["witness"]
        assert witness["kind"] == "inconsistent-cycle"
        assert sorted(witness["cycle"]) == [0, 1, 2]
        assert witness["alpha_product"] == "1/2"
        assert "violation" not in report

    def test_classify_self_loop_witness(self, tmp_path, capsys):
        edges = [
            {"u": u, "v": v, "alpha": alpha}
            for (u, v), alpha in zip(((0, 1), (1, 2), (2, 0)), ((1, 1), (1, 1), (0, 1)))
        ]
        path = GameRepository().save(build_game(3, 2, edges), tmp_path / "self_loop.json")
        assert main(["classify", "--game", str(path)]) == 0
        witness = _stdout_json(capsys)["witness"]
        assert witness["kind"] == "digraph-cycle"
        assert witness["arcs"] == [[2, 0]]
        assert witness["cycle"] is None

    def test_analyze(self, petersen_file, capsys):
        assert main(["analyze", "--game", str(petersen_file)]) == 0
        report = _stdout_json(capsys)
        assert report["density"] == "3/2"
        assert sorted(report["density_witness"]) == list(range(10))
        assert report["coord_density"] == "3/2"
        assert report["max_degree"] == 3
        assert report["chromatic"] == 3
        assert report["matching_size"] == 5
        for old_key in ("rho", "rho_witness", "rho_coord", "chromatic_number"):
            assert old_key not in report
        assert report["bounds"]["density"]["value"] == "4/1"
        assert report["bounds"]["degree"]["applicable"] is False

    def test_analyze_csv(self, petersen_file, capsys):
        assert main(["analyze", "--game", str(petersen_file), "--format", "csv"]) == 0
        header, row = capsys.readouterr().out.strip().splitlines()
        assert header.split(",")[:3] == ["n", "edges", "density"]
        assert row.startswith("10,15,3/2,")

    def test_out_file(self, petersen_file, tmp_path, capsys):
        out = tmp_path / "reports" / "analyze.json"
        assert main(["analyze", "--game", str(petersen_file), "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text(encoding="utf-8"))["density"] == "3/2"

    def test_no_pne_pipeline(self, tmp_path, capsys):
        path = tmp_path / "no_pne.json"
        assert main(["gen", "--construction", "no-pne", "--out", str(path)]) == 0
        capsys.readouterr()

        assert main(["br-graph", "--game", str(path)]) == 0
        assert _stdout_json(capsys)["acyclic"] is False

        assert main(["br-graph", "--game", str(path), "--start", "1,1,1"]) == 0
        dynamics = _stdout_json(capsys)
        assert dynamics["outcome"] == "cycle"
        assert dynamics["cycle"][0] == dynamics["cycle"][-1]

        assert main(["poa", "--game", str(path)]) == 0
        assert _stdout_json(capsys)["poa"] == "none"

    def test_gen_to_stdout(self, capsys):
        assert main(["gen", "--construction", "gnp", "--n", "6", "--d", "2", "--seed", "4"]) == 0
        loaded = GameRepository().parse(capsys.readouterr().out)
        assert loaded.game.n == 6
        assert loaded.meta["construction"] == "gnp"

    def test_experiment(self, tmp_path, capsys):
        code = main([
            "experiment", "--name", "common-color", "--n", "4", "--trials", "2",
            "--seed", "1", "--out", str(tmp_path),
        ])
        assert code == 0
        paths = _stdout_json(capsys)
        assert set(paths) == {"rows", "summary"}
        assert (tmp_path / "common-color.csv").exists()


class TestErrors:
    """오류 출력과 exit code"""

    def test_bad_json_file(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["poa", "--game", str(path)]) == 1
        error = _error_json(capsys)
        assert error["error"] is True
        assert error["error_code"] == "GameFileError"
        assert error["details"]["file"] == str(path)

    def test_invalid_game(self, tmp_path, capsys):
        path = tmp_path / "dup.json"
        path.write_text(json.dumps({"n": 2, "colors": 2, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 0}]}))
        assert main(["analyze", "--game", str(path)]) == 1
        error = _error_json(capsys)
        assert error["error_code"] == "DuplicateEdge"
        assert error["details"]["file"] == str(path)

    def test_cap_exceeded(self, bipartite_file, capsys):
        assert main(["poa", "--game", str(bipartite_file), "--cap-profiles", "1"]) == 2
        assert _error_json(capsys)["error_code"] == "SearchSpaceExceeded"

    def test_missing_game(self, capsys):
        assert main(["poa"]) == 1
        assert _error_json(capsys)["error_code"] == "InvalidParameter"

    @pytest.mark.parametrize(
        "argv",
        [[], ["solve"], ["poa", "--k", "two"], ["gen", "--construction", "unknown"], ["poa", "--format", "xml"]],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 1
        assert _error_json(capsys)["error_code"] == "InvalidParameter"

    def test_invalid_profile(self, bipartite_file, capsys):
        assert main(["br-graph", "--game", str(bipartite_file), "--start", "1,2"]) == 1
        assert _error_json(capsys)["error_code"] == "InvalidProfile"
