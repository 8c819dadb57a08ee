"""
CLI 명령 실행
CommandSpec 하나를 받아 라이브러리를 호출하고 결과를 stdout 또는 --out에 쓴다.
"""
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO

import pandas as pd
from pydantic import BaseModel

from app.application.services.experiment_service import ExperimentService
from app.core.config import settings
from app.core.exceptions import ClusteringGameError, InvalidParameterError
from app.core.rational import format_rational, parse_rational
from app.domain.equilibria import (
    BrScheduler,
    EquilibriumParams,
    SchedulerPolicy,
    br_graph_acyclic,
    price_of_anarchy,
    run_br_dynamics,
)
from app.domain.game import ClusteringGame, EdgeKind, Graph, build_game, validate_profile
from app.domain.generators import (
    ConstructedInstance,
    GnpParams,
    KindMix,
    RandomGameOptions,
    Regime,
    RuleFamily,
    UniformNonemptySubsets,
    mixed_triangle_instance,
    bipartite_tightness_instance,
    chromatic_lb_instance,
    degree_lb_instance,
    density_lb_instance,
    gen_gnp,
    matching_lb_instance,
    embedding_block,
    random_game,
    random_strategy_sets,
    restricted_color_instance,
    unit_game,
)
from app.domain.shapley import DigraphCycle, build_no_pne_game, build_violation_game, classify_rule
from app.domain.topology import (
    BoundRecord,
    TopologyOptions,
    compute_topology_stats,
    max_subgraph_density,
    topological_poa_bounds,
)
from app.infrastructure.storage import GameRepository, LoadedGame, write_report
from app.presentation.schemas.common import ErrorResponse
from app.presentation.schemas.report import (
    BoundSchema,
    BrDynamicsReport,
    BrGraphReport,
    ClassifyReport,
    GeneratedReport,
    PoAReport,
    TopologyReport,
    ViolationWitness,
)


logger = logging.getLogger(__name__)

COMMANDS = ("analyze", "poa", "br-graph", "classify", "gen", "experiment")

CONSTRUCTIONS = (
    "gnp",
    "random-game",
    "bipartite-tightness",
    "density-lb",
    "matching-lb",
    "chromatic-lb",
    "restricted-color",
    "degree-lb",
    "br-cycle",
    "no-pne",
    "mixed-triangle",
)

OUTPUT_FORMATS = ("json", "csv")


@dataclass
class CommandSpec:
    """
    CLI 명령 하나

    - command: analyze | poa | br-graph | classify | gen | experiment
    - game: 입력 게임 파일
    - out: 출력 경로 (None이면 stdout, experiment는 디렉터리)
    - params: 명령별 파라미터 (ε, k, 상한, 시드 등. 유리수는 문자열 그대로)
    """
    command: str
    game: Optional[Path] = None
    out: Optional[Path] = None
    fmt: str = "json"
    params: Dict[str, Any] = field(default_factory=dict)

    def param(self, name: str, default: Any = None) -> Any:
        value = self.params.get(name)
        return default if value is None else value


# ===== 출력 =====

def _flatten(document: Dict[str, Any]) -> Dict[str, Any]:
    """CSV 한 행 (리스트/딕셔너리는 JSON 문자열)"""
    return {
        key: json.dumps(value, ensure_ascii=False) if isinstance(value, (list, dict)) else value
        for key, value in document.items()
    }


def _render(model: BaseModel, fmt: str) -> str:
    document = model.model_dump()
    if fmt == "csv":
        return pd.DataFrame([_flatten(document)]).to_csv(index=False)
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: Optional[Path], stdout: TextIO) -> None:
    if out is None:
        stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"[CLI] 결과 저장 - file: {out}")


# ===== 입력 =====

def _load(spec: CommandSpec) -> LoadedGame:
    if spec.game is None:
        raise InvalidParameterError(f"{spec.command}에는 --game이 필요합니다", {"command": spec.command})
    return GameRepository().load(spec.game)


def _cap(spec: CommandSpec, name: str) -> Optional[int]:
    value = spec.params.get(name)
    return None if value is None else int(value)


def _profile(game: ClusteringGame, text: str) -> List[int]:
    try:
        colors = [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InvalidParameterError(f"프로필은 쉼표로 구분한 정수여야 합니다: {text!r}", {"start": text})
    return list(validate_profile(game, colors))


def _node_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InvalidParameterError(f"노드 목록은 쉼표로 구분한 정수여야 합니다: {text!r}", {"nodes": text})


def _bound_schemas(records: Dict[Any, BoundRecord]) -> Dict[str, BoundSchema]:
    """상한 이름 → BoundSchema (적용 불가 상한은 failed_hypothesis만)"""
    return {
        record.name.value: BoundSchema(
            applicable=record.applicable,
            value=None if record.value is None else format_rational(record.value),
            failed_hypothesis=record.failed_hypothesis,
            lower_companion=None if record.lower_companion is None else format_rational(record.lower_companion),
        )
        for record in records.values()
    }


# ===== 명령 =====

def _analyze(spec: CommandSpec) -> BaseModel:
    game = _load(spec).game
    options = TopologyOptions(chromatic_cap=_cap(spec, "cap_chromatic"))
    stats = compute_topology_stats(game.graph, options)
    bounds = topological_poa_bounds(game, density=stats.density, coord_density=stats.coord_density)
    return TopologyReport(
        n=game.n,
        edges=len(game.graph.edges),
        density=format_rational(stats.density.value),
        density_witness=list(stats.density.witness),
        coord_density=format_rational(stats.coord_density.value),
        max_degree=stats.max_degree,
        chromatic=stats.chromatic_number,
        coloring=None if stats.chromatic_coloring is None else list(stats.chromatic_coloring),
        matching_size=stats.matching_size,
        matching=[list(pair) for pair in stats.matching],
        bounds=_bound_schemas(bounds),
    )


def _poa(spec: CommandSpec) -> BaseModel:
    game = _load(spec).game
    eps = parse_rational(spec.param("eps", "1"), field="eps")
    k = int(spec.param("k", 1))
    result = price_of_anarchy(game, EquilibriumParams(eps, k), cap=_cap(spec, "cap_profiles"))
    bounds = topological_poa_bounds(game, eps, k)
    return PoAReport(
        poa=result.label,
        status=result.status.value,
        epsilon=format_rational(eps),
        k=k,
        equilibria=result.equilibrium_count,
        worst_equilibrium=None if result.worst_equilibrium is None else list(result.worst_equilibrium),
        worst_value=None if result.worst_value is None else format_rational(result.worst_value),
        optimum=list(result.optimum.profile),
        optimum_value=format_rational(result.optimum.value),
        bounds=_bound_schemas(bounds),
    )


def _br_graph(spec: CommandSpec) -> BaseModel:
    game = _load(spec).game
    start = spec.params.get("start")
    if start is None:
        result = br_graph_acyclic(game, cap=_cap(spec, "cap_profiles"))
        return BrGraphReport(
            acyclic=result.acyclic,
            cycle=[list(profile) for profile in result.cycle],
            explored=result.explored,
        )

    policy = SchedulerPolicy(spec.param("scheduler", SchedulerPolicy.ROUND_ROBIN.value))
    scheduler = BrScheduler(policy, seed=int(spec.param("seed", 0)))
    max_steps = spec.params.get("max_steps")
    result = run_br_dynamics(game, _profile(game, start), scheduler, None if max_steps is None else int(max_steps))
    return BrDynamicsReport(
        outcome=result.outcome.value,
        steps=result.steps,
        scheduler=policy.value,
        profile=None if result.profile is None else list(result.profile),
        cycle=[list(profile) for profile in result.cycle],
    )


def _classify(spec: CommandSpec) -> BaseModel:
    game = _load(spec).game
    result = classify_rule(game.graph, game.rule)
    if result.is_gws:
        cert = result.certificate
        return ClassifyReport(
            verdict=result.verdict.value,
            sigma=list(cert.sigma),
            gamma=[format_rational(g) for g in cert.gamma],
            order=list(cert.order),
            components=[list(component) for component in cert.components],
        )
    violation = result.violation
    if isinstance(violation, DigraphCycle):
        witness = ViolationWitness(
            kind=violation.kind.value,
            components=[list(component) for component in violation.components],
            arcs=[list(arc) for arc in violation.arcs],
        )
    else:
        witness = ViolationWitness(
            kind=violation.kind.value,
            cycle=list(violation.nodes),
            alpha_product=format_rational(violation.alpha_product),
        )
    return ClassifyReport(verdict=result.verdict.value, witness=witness)


def _inconsistent_triangle() -> ClusteringGame:
    """기본 입력: 비율 (1,1), (1,1), (2,1)인 협조 삼각형"""
    shares = ((1, 1), (1, 1), (2, 1))
    edges = [
        {"u": u, "v": v, "kind": EdgeKind.COORDINATION, "w": 1, "alpha": alpha}
        for (u, v), alpha in zip(((0, 1), (1, 2), (2, 0)), shares)
    ]
    return build_game(3, 2, edges)


def _base_graph(spec: CommandSpec) -> Graph:
    """--game이 있으면 그 그래프, 없으면 --n, --d, --regime, --seed로 G(n, p)"""
    if spec.game is not None:
        return _load(spec).game.graph
    n = spec.params.get("n")
    if n is None:
        raise InvalidParameterError("--game 또는 --n이 필요합니다", {"construction": spec.param("construction")})
    regime = Regime(spec.param("regime", Regime.SPARSE.value))
    d = parse_rational(spec.param("d", "2" if regime is Regime.SPARSE else "1/2"), field="d")
    return gen_gnp(GnpParams(int(n), d, regime, int(spec.param("seed", 0))))


def _construct(spec: CommandSpec) -> ConstructedInstance:
    name = spec.param("construction")
    seed = int(spec.param("seed", 0))
    colors = spec.params.get("colors")

    if name == "gnp":
        graph = _base_graph(spec)
        game = unit_game(graph, int(colors or 2))
        return ConstructedInstance(game, meta={
            "construction": "gnp", "regime": spec.param("regime", "sparse"),
            "d": spec.param("d"), "seed": seed,
        })
    if name == "random-game":
        graph = _base_graph(spec)
        c = int(colors or 3)
        sets = None
        if spec.param("random_sets", False):
            sets = tuple(random_strategy_sets(graph.node_count, c, UniformNonemptySubsets(c), seed))
        options = RandomGameOptions(
            rule=RuleFamily(spec.param("rule", RuleFamily.EQUAL_SPLIT.value)),
            kinds=KindMix(spec.param("kinds", KindMix.COORDINATION.value)),
            strategy_sets=sets,
        )
        game = random_game(graph, c, options, seed)
        return ConstructedInstance(game, meta={
            "construction": "random-game", "rule": options.rule.value, "kinds": options.kinds.value,
            "random_sets": sets is not None, "seed": seed,
        })
    if name == "bipartite-tightness":
        return bipartite_tightness_instance(
            int(spec.param("l", 2)), int(spec.param("r", 3)),
            spec.param("gamma_l", "1"), spec.param("gamma_r", "1"),
        )
    if name == "density-lb":
        graph = _base_graph(spec)
        subset = _node_list(spec.params.get("subset"))
        if subset is None:
            subset = list(max_subgraph_density(graph).witness)
        return density_lb_instance(graph, subset)
    if name == "matching-lb":
        graph = _base_graph(spec)
        c = int(colors or 2)
        block = _node_list(spec.params.get("subset"))
        if spec.param("block") == "embedded":
            block = embedding_block(graph.node_count, c)
        return matching_lb_instance(graph, c, block)
    if name == "chromatic-lb":
        return chromatic_lb_instance(_base_graph(spec), _cap(spec, "cap_chromatic"))
    if name == "restricted-color":
        return restricted_color_instance(_base_graph(spec), int(colors or 2))
    if name == "degree-lb":
        return degree_lb_instance(_base_graph(spec), spec.param("eps", "1"), int(spec.param("k", 2)))
    if name in ("br-cycle", "no-pne"):
        base = _load(spec).game if spec.game is not None else _inconsistent_triangle()
        classification = classify_rule(base.graph, base.rule)
        if name == "br-cycle":
            game = build_violation_game(base.graph, base.rule, classification, int(colors or 2))
        else:
            game = build_no_pne_game(base.graph, base.rule, classification, int(colors or 3))
        violation = classification.violation
        return ConstructedInstance(game, meta={
            "construction": name,
            "source": None if spec.game is None else str(spec.game),
            "violation": violation.kind.value,
        })
    if name == "mixed-triangle":
        return mixed_triangle_instance(int(colors or 3), seed)
    raise InvalidParameterError(f"알 수 없는 구성입니다: {name}", {"construction": name, "choices": list(CONSTRUCTIONS)})


def _gen(spec: CommandSpec, stdout: TextIO) -> int:
    instance = _construct(spec)
    repository = GameRepository()
    meta = {key: value for key, value in instance.meta.items() if value is not None}
    if spec.out is None:
        stdout.write(repository.serialize(instance.game, meta))
        return 0
    repository.save(instance.game, spec.out, meta)
    ratio = instance.ratio
    report = GeneratedReport(
        construction=str(spec.param("construction")),
        n=instance.game.n,
        edges=len(instance.game.graph.edges),
        colors=instance.game.color_count,
        equilibrium=None if instance.equilibrium is None else list(instance.equilibrium),
        optimum=None if instance.optimum is None else list(instance.optimum),
        ratio=None if ratio is None else format_rational(ratio),
        meta=meta,
    )
    stdout.write(_render(report, spec.fmt))
    return 0


def _experiment(spec: CommandSpec, stdout: TextIO) -> int:
    name = spec.param("name")
    if name is None:
        raise InvalidParameterError("experiment에는 --name이 필요합니다")
    service = ExperimentService(workers=spec.params.get("workers"))
    common = {"trials": spec.params.get("trials"), "seed": spec.params.get("seed")}
    n_values = spec.params.get("n_list") or [8]
    if name == "sparse-poa":
        report = service.run_sparse_poa(n_values, d=spec.param("d", "2"), **common)
    elif name == "dense-poa":
        report = service.run_dense_poa(
            n_values[0], d=spec.param("d", "1/2"), c=spec.params.get("c_list") or [16],
            block=spec.param("block", "all"), **common,
        )
    elif name == "degree-scaling":
        report = service.run_degree_scaling(
            n_values, d=spec.param("d", "3"), epsilon=spec.param("eps", "1"), k=int(spec.param("k", 2)), **common,
        )
    elif name == "common-color":
        c_list = spec.params.get("c_list") or [3]
        report = service.run_common_color(
            n_values, d=spec.param("d", "2"), c=c_list[0], dist=spec.param("dist", "uniform"),
            epsilon=spec.param("eps", "1"), k=int(spec.param("k", 2)), **common,
        )
    else:
        raise InvalidParameterError(f"알 수 없는 실험입니다: {name}", {"name": name})

    out_dir = spec.out if spec.out is not None else Path(settings.EXPERIMENT_OUTPUT_DIR)
    paths = write_report(report, out_dir, spec.fmt)
    stdout.write(json.dumps({key: str(path) for key, path in paths.items()}, ensure_ascii=False) + "\n")
    return 0


_REPORT_HANDLERS: Dict[str, Callable[[CommandSpec], BaseModel]] = {
    "analyze": _analyze,
    "poa": _poa,
    "br-graph": _br_graph,
    "classify": _classify,
}


def error_document(error: ClusteringGameError) -> str:
    return ErrorResponse(**error.to_dict()).model_dump_json()


def run_command(spec: CommandSpec, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    명령 실행

    Returns:
        exit code (0 성공, 1 입력/구성 오류, 2 탐색 상한 초과)
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if spec.fmt not in OUTPUT_FORMATS:
            raise InvalidParameterError(f"지원하지 않는 형식입니다: {spec.fmt}", {"format": spec.fmt})
        if spec.command == "gen":
            return _gen(spec, stdout)
        if spec.command == "experiment":
            return _experiment(spec, stdout)
        handler = _REPORT_HANDLERS.get(spec.command)
        if handler is None:
            raise InvalidParameterError(f"알 수 없는 명령입니다: {spec.command}", {"command": spec.command})
        _emit(_render(handler(spec), spec.fmt), spec.out, stdout)
        return 0
    except ClusteringGameError as e:
        if spec.game is not None:
            e.details.setdefault("file", str(spec.game))
        logger.warning(f"[CLI] 명령 실패 - command: {spec.command}, error: {e.error_code}: {e.message}")
        stderr.write(error_document(e) + "\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"[CLI] 예기치 않은 오류 - command: {spec.command}: {str(e)}", exc_info=True)
        stderr.write(
            ErrorResponse(error_code="InternalError", error_message=str(e)).model_dump_json() + "\n"
        )
        return 1
