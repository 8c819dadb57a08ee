"""
게임 파일 Repository 테스트
"""
import json

import pytest

from app.core.exceptions import DuplicateEdgeError, GameFileError, SelfLoopError
from app.domain.game.builder import build_game, make_game
from app.infrastructure.storage import GameRepository


@pytest.fixture
def repository():
    return GameRepository()


@pytest.fixture
def mixed_game():
    edges = [
        {"u": 0, "v": 1, "kind": "coord", "w": "3/2", "alpha": ("1", "2")},
        {"u": 1, "v": 2, "kind": "anti", "w": 1, "alpha": (1, 1)},
        {"u": 0, "v": 3, "kind": "coord", "w": 2, "alpha": ("0", 1)},
    ]
    sets = [[1, 2], [1, 2, 3], [3], [2, 3]]
    preferences = [{1: "1/3"}, {}, {3: 2}, {}]
    return build_game(4, 3, edges, sets, preferences)


class TestRoundTrip:
    """정규형 직렬화"""

    def test_byte_identical(self, repository, mixed_game):
        text = repository.serialize(mixed_game, {"construction": "unit", "seed": 3})
        loaded = repository.parse(text)
        assert loaded.game == mixed_game
        assert loaded.meta == {"construction": "unit", "seed": 3}
        assert repository.serialize(loaded.game, loaded.meta) == text

    def test_rationals_as_strings(self, repository, mixed_game):
        document = repository.to_document(mixed_game)
        assert document["edges"][0] == {"u": 0, "v": 1, "kind": "coord", "w": "3/2", "alpha": ["1/1", "2/1"]}
        assert document["edges"][2]["alpha"] == ["0/1", "1/1"]
        assert document["preferences"][0] == {"1": "1/3"}
        assert document["strategy_sets"][2] == [3]

    def test_defaults_are_omitted(self, repository, triangle):
        document = repository.to_document(make_game(triangle, 2))
        assert set(document) == {"n", "colors", "edges"}

    def test_save_and_load(self, repository, mixed_game, tmp_path):
        path = repository.save(mixed_game, tmp_path / "nested" / "game.json")
        loaded = repository.load(path)
        assert loaded.game == mixed_game
        assert loaded.source == str(path)


class TestParseErrors:
    """파일 오류"""

    def test_invalid_json(self, repository):
        with pytest.raises(GameFileError) as exc:
            repository.parse('{"n": 3,\n "colors": }', source="broken.json")
        assert exc.value.details["file"] == "broken.json"
        assert exc.value.details["line"] == 2

    def test_unknown_field(self, repository):
        with pytest.raises(GameFileError) as exc:
            repository.parse(json.dumps({"n": 2, "colors": 2, "edges": [], "players": 2}))
        assert any(error["loc"] == "players" for error in exc.value.details["errors"])

    def test_missing_field(self, repository):
        with pytest.raises(GameFileError):
            repository.parse(json.dumps({"colors": 2}))

    def test_bad_edge_kind(self, repository):
        document = {"n": 2, "colors": 2, "edges": [{"u": 0, "v": 1, "kind": "friend"}]}
        with pytest.raises(GameFileError):
            repository.parse(json.dumps(document))

    def test_validation_error_carries_file(self, repository):
        document = {"n": 2, "colors": 2, "edges": [{"u": 1, "v": 1}]}
        with pytest.raises(SelfLoopError) as exc:
            repository.parse(json.dumps(document), source="loop.json")
        assert exc.value.details["file"] == "loop.json"

    def test_duplicate_edge(self, repository):
        document = {"n": 3, "colors": 2, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2}, {"u": 1, "v": 0}]}
        with pytest.raises(DuplicateEdgeError) as exc:
            repository.parse(json.dumps(document))
        assert exc.value.details["first_index"] == 0

    def test_missing_file(self, repository, tmp_path):
        with pytest.raises(GameFileError) as exc:
            repository.load(tmp_path / "absent.json")
        assert exc.value.details["file"].endswith("absent.json")
