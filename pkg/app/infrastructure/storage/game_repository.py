"""
게임 파일 Repository
JSON 게임 파일 읽기/쓰기. 직렬화는 정규형이라 읽고 다시 쓰면 바이트 단위로 같다.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from app.core.exceptions import ClusteringGameError, GameFileError
from app.core.rational import format_rational
from app.domain.game.builder import build_game
from app.domain.game.models import ClusteringGame
from app.presentation.schemas.game import GameFile


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class LoadedGame:
    """파일에서 읽은 게임과 meta"""
    game: ClusteringGame
    meta: Dict[str, Any] = field(default_factory=dict)
    source: Optional[str] = None


class GameRepository:
    """게임 파일 데이터 접근 계층"""

    def parse(self, text: str, source: Optional[str] = None) -> LoadedGame:
        """
        JSON 문자열을 게임으로 변환

        Raises:
            GameFileError: JSON 문법 오류, 스키마 불일치
            GameValidationError: 게임 불변식 위반 (details에 file 추가)
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise GameFileError(
                f"JSON 파싱 실패: {e.msg}",
                {"file": source, "line": e.lineno, "column": e.colno},
            )

        try:
            schema = GameFile.model_validate(raw)
        except ValidationError as e:
            errors = [
                {"loc": ".".join(str(part) for part in err["loc"]), "message": err["msg"]}
                for err in e.errors()
            ]
            raise GameFileError(f"게임 파일 스키마 불일치 ({len(errors)}건)", {"file": source, "errors": errors})

        try:
            game = build_game(
                schema.n,
                schema.colors,
                [edge.model_dump() for edge in schema.edges],
                schema.strategy_sets,
                schema.preferences,
                schema.planar,
            )
        except ClusteringGameError as e:
            if source is not None:
                e.details.setdefault("file", source)
            raise
        return LoadedGame(game=game, meta=dict(schema.meta or {}), source=source)

    def load(self, path: PathLike) -> LoadedGame:
        """게임 파일 읽기"""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise GameFileError(f"게임 파일을 읽을 수 없습니다: {e.strerror}", {"file": str(path)})
        loaded = self.parse(text, source=str(path))
        logger.debug(f"[GameRepository] 게임 로드 - file: {path}, n: {loaded.game.n}, edges: {len(loaded.game.graph.edges)}")
        return loaded

    def to_document(self, game: ClusteringGame, meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """정규형 딕셔너리 (대칭 전략 집합과 0 선호도는 생략)"""
        document: Dict[str, Any] = {"n": game.n, "colors": game.color_count}
        if game.graph.declared_planar:
            document["planar"] = True
        document["edges"] = [
            {
                "u": edge.u,
                "v": edge.v,
                "kind": edge.kind.value,
                "w": format_rational(edge.weight),
                "alpha": [format_rational(a_uv), format_rational(a_vu)],
            }
            for edge, (a_uv, a_vu) in zip(game.graph.edges, game.rule.shares)
        ]
        if not game.is_symmetric:
            document["strategy_sets"] = [list(colors) for colors in game.strategy_sets]
        if not game.has_zero_preferences:
            prefs: List[Dict[str, str]] = []
            for node in range(game.n):
                entries = game.preferences[node]
                prefs.append({str(color): format_rational(entries[color]) for color in sorted(entries)})
            document["preferences"] = prefs
        if meta:
            document["meta"] = meta
        return document

    def serialize(self, game: ClusteringGame, meta: Optional[Dict[str, Any]] = None) -> str:
        return json.dumps(self.to_document(game, meta), indent=2, ensure_ascii=False) + "\n"

    def save(self, game: ClusteringGame, path: PathLike, meta: Optional[Dict[str, Any]] = None) -> Path:
        """게임 파일 쓰기 (상위 디렉터리 생성)"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.serialize(game, meta), encoding="utf-8")
        logger.info(f"[GameRepository] 게임 저장 - file: {path}")
        return path
