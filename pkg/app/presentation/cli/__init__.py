"""
명령줄 인터페이스
"""
from app.presentation.cli.commands import CommandSpec, run_command
from app.presentation.cli.main import main

__all__ = ["CommandSpec", "main", "run_command"]
