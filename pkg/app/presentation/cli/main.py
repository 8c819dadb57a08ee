"""
clustering-games 명령줄 진입점

    clustering-games analyze --game g.json
    clustering-games poa --game g.json --eps 1 --k 1
    clustering-games br-graph --game g.json [--start 1,2,1 --scheduler round-robin]
    clustering-games classify --game g.json
    clustering-games gen --construction bipartite-tightness --l 2 --r 3 --out k23.json
    clustering-games experiment --name sparse-poa --n 8 --trials 50 --out results/
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from app.core.config import settings
from app.core.exceptions import InvalidParameterError
from app.presentation.cli.commands import (
    COMMANDS,
    CONSTRUCTIONS,
    OUTPUT_FORMATS,
    CommandSpec,
    error_document,
    run_command,
)


logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class _ArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 exit 2(상한 초과)와 구분되는 InvalidParameter로 바꾼다"""

    def error(self, message: str):
        raise InvalidParameterError(f"잘못된 인자: {message}", {"usage": self.format_usage().strip()})


def configure_logging(level: Optional[str] = None) -> None:
    """로그는 stderr로만 (stdout은 JSON 결과 전용)"""
    name = level or ("DEBUG" if settings.DEBUG else settings.LOG_LEVEL)
    logging.basicConfig(level=getattr(logging, name.upper(), logging.INFO), format=LOG_FORMAT, stream=sys.stderr)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--game", type=Path, help="입력 게임 파일 (JSON)")
    parser.add_argument("--out", type=Path, help="출력 경로 (기본 stdout, experiment는 디렉터리)")
    parser.add_argument("--format", dest="fmt", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--cap-profiles", type=int, help="프로필 공간 상한 (기본 PROFILE_CAP)")
    parser.add_argument("--cap-chromatic", type=int, help="채색수 계산 노드 수 상한 (기본 CHROMATIC_CAP)")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--seed", type=int, help="시드")
    parser.add_argument("--eps", help="ε (\"p/q\" 또는 정수)")
    parser.add_argument("--k", type=int, help="연합 크기 k")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="clustering-games", description="네트워크 클러스터링 게임 분석")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    analyze = sub.add_parser("analyze", help="ρ, Δ, χ, μ와 위상 PoA 상한")
    _add_common(analyze)

    poa = sub.add_parser("poa", help="정확한 (ε,k)-PoA")
    _add_common(poa)

    br_graph = sub.add_parser("br-graph", help="최선 응답 그래프 순환 판정 또는 동역학")
    _add_common(br_graph)
    br_graph.add_argument("--start", help="동역학 시작 프로필 (예: 1,2,1)")
    br_graph.add_argument("--scheduler", choices=["round-robin", "lowest-improving-id", "seeded-random"])
    br_graph.add_argument("--max-steps", type=int)

    classify = sub.add_parser("classify", help="분배 규칙의 일반화 가중 Shapley 분류")
    _add_common(classify)

    gen = sub.add_parser("gen", help="게임 생성")
    _add_common(gen)
    gen.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    gen.add_argument("--n", type=int, help="G(n, p) 노드 수")
    gen.add_argument("--d", help="sparse: p = d/n, dense: p = d")
    gen.add_argument("--regime", choices=["sparse", "dense"])
    gen.add_argument("--colors", type=int, help="색 개수 c")
    gen.add_argument("--l", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--gamma-l")
    gen.add_argument("--gamma-r")
    gen.add_argument("--subset", help="노드 부분집합 (예: 0,1,2)")
    gen.add_argument("--block", choices=["all", "embedded"])
    gen.add_argument("--rule", choices=["equal-split", "random-positive", "weighted-shapley", "random-with-zeros"])
    gen.add_argument("--kinds", choices=["coord", "anti", "mixed"])
    gen.add_argument("--random-sets", action="store_true", help="균등 비공 부분집합 전략 집합")

    experiment = sub.add_parser("experiment", help="Monte Carlo 실험")
    _add_common(experiment)
    experiment.add_argument("--name", required=True, choices=["sparse-poa", "dense-poa", "degree-scaling", "common-color"])
    experiment.add_argument("--n", dest="n_list", type=int, action="append", help="노드 수 (반복 가능)")
    experiment.add_argument("--c", dest="c_list", type=int, action="append", help="색 개수 (반복 가능)")
    experiment.add_argument("--d")
    experiment.add_argument("--trials", type=int)
    experiment.add_argument("--dist", choices=["uniform", "pair-with-common"])
    experiment.add_argument("--block", choices=["all", "embedded"])
    experiment.add_argument("--workers", type=int, help="워커 수 (기본 EXPERIMENT_WORKERS)")
    return parser


_SPEC_FIELDS = ("command", "game", "out", "fmt", "log_level")


def parse_command(argv: Optional[Sequence[str]] = None) -> CommandSpec:
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise InvalidParameterError("명령이 필요합니다", {"choices": list(COMMANDS)})
    params = {key: value for key, value in vars(args).items() if key not in _SPEC_FIELDS}
    return CommandSpec(command=args.command, game=args.game, out=args.out, fmt=args.fmt, params=params)


def _log_level(argv: Sequence[str]) -> Optional[str]:
    for index, arg in enumerate(argv):
        if arg == "--log-level" and index + 1 < len(argv):
            return argv[index + 1]
        if arg.startswith("--log-level="):
            return arg.split("=", 1)[1]
    return None


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    configure_logging(_log_level(argv))
    try:
        spec = parse_command(argv)
    except InvalidParameterError as e:
        logger.warning(f"[CLI] 인자 오류: {e.message}")
        sys.stderr.write(error_document(e) + "\n")
        return e.exit_code
    logger.debug(f"[CLI] 명령 시작 - command: {spec.command}, game: {spec.game}")
    return run_command(spec)


if __name__ == "__main__":
    sys.exit(main())
