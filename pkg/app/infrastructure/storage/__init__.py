"""
파일 저장소
게임 파일 JSON 입출력과 실험 보고서 저장
"""
from app.infrastructure.storage.game_repository import GameRepository, LoadedGame
from app.infrastructure.storage.report_writer import REPORT_FORMATS, build_summary, read_rows, write_report

__all__ = [
    "GameRepository",
    "LoadedGame",
    "REPORT_FORMATS",
    "build_summary",
    "read_rows",
    "write_report",
]
