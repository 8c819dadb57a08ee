"""
실험 서비스 (Experiment Service)

[목적]
- 무작위 그래프 위의 PoA 주장을 노트북 규모로 재현하는 Monte Carlo 실험

[실험]
1. sparse-poa: G(n, d/n)의 ρ(G)와 상한 1+2ρ, 작은 n에서는 정확한 PoA로 상한 확인
2. dense-poa: G(n, d)에서 매칭 하한 인스턴스의 균형 검증과 비율
3. degree-scaling: Δ(G_n)과 Δ·ln ln n/ln n, 작은 n에서 2εΔ 상한과 차수 하한 인스턴스
4. common-color: 무작위 전략 집합 단위 가중치 게임의 정확한 (ε,k)-PoA

[재현성]
- 시행 시드는 derive_seed(seed, TRIALS, 실험 코드, n, trial)로 파생
- 같은 (실험, seed)이면 elapsed를 제외한 행이 같다
- 상한 비교는 정확한 유리수로 하고 float은 요약 통계에만 쓴다
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from app.application.workers.trial_worker import TrialWorker
from app.core.config import settings
from app.core.exceptions import InvalidParameterError
from app.core.rational import RationalLike, format_rational, parse_rational
from app.domain.equilibria import (
    EquilibriumParams,
    PoAResult,
    PoAStatus,
    is_epsilon_k_equilibrium,
    iter_equilibria,
    price_of_anarchy,
)
from app.domain.execution import TrialTask
from app.domain.game.utility import social_welfare, utility
from app.domain.generators import (
    GnpParams,
    KindMix,
    PairWithCommon,
    RandomGameOptions,
    RuleFamily,
    Stream,
    UniformNonemptySubsets,
    ValueRange,
    common_color_frequency,
    degree_lb_instance,
    degree_lower_bound,
    density_lb_instance,
    derive_seed,
    gen_gnp,
    matching_lb_instance,
    matching_lower_bound,
    embedding_block,
    random_game,
    random_strategy_sets,
    unit_game,
)
from app.domain.topology import max_subgraph_density, maximum_matching


logger = logging.getLogger(__name__)

Row = Dict[str, Any]

SUMMARY_STATS = ("mean", "median", "min", "max", "std")

# 요약에서 제외하는 식별 열
_ID_COLUMNS = ("trial", "seed")


class ExperimentName(str, enum.Enum):
    SPARSE_POA = "sparse-poa"
    DENSE_POA = "dense-poa"
    DEGREE_SCALING = "degree-scaling"
    COMMON_COLOR = "common-color"


# 시드 파생 경로에 쓰는 실험 코드 (값을 바꾸면 기존 결과가 재현되지 않음)
_EXPERIMENT_CODES = {
    ExperimentName.SPARSE_POA: 1,
    ExperimentName.DENSE_POA: 2,
    ExperimentName.DEGREE_SCALING: 3,
    ExperimentName.COMMON_COLOR: 4,
}


class SetDistribution(str, enum.Enum):
    UNIFORM = "uniform"
    PAIR_WITH_COMMON = "pair-with-common"


SPARSE_POA_COLUMNS = (
    "n", "d", "p", "trial", "seed", "edges", "rho", "rho_value", "bound", "bound_value",
    "poa", "poa_value", "within_bound",
    "lb_ratio", "lb_is_equilibrium", "lb_poa", "lb_tight",
    "elapsed",
)

DENSE_POA_COLUMNS = (
    "n", "d", "c", "block", "trial", "seed", "edges", "q", "induced_edges",
    "is_equilibrium", "ratio", "ratio_value", "lower_bound", "lower_value", "meets_lower", "ratio_over_c",
    "elapsed",
)

DEGREE_SCALING_COLUMNS = (
    "n", "d", "epsilon", "k", "trial", "seed", "edges", "max_degree", "scaled_degree", "upper_bound",
    "poa", "poa_value", "within_upper",
    "lb_ratio", "lb_is_equilibrium", "lower_bound", "lb_meets_lower",
    "elapsed",
)

COMMON_COLOR_COLUMNS = (
    "n", "d", "c", "dist", "epsilon", "k", "trial", "seed", "edges",
    "poa", "poa_value", "equilibria", "no_equilibrium",
    "common_frequency", "claimed_d0",
    "local_pairs", "local_violations", "private_ratio",
    "elapsed",
)


@dataclass
class ExperimentReport:
    """
    실험 결과

    rows: 시행별 행 (시행 순서)
    summary: 그룹(n 또는 c)별 열마다 mean/median/min/max/std
    failures: 실패한 시행 (task_id, error)
    """
    name: str
    seed: int
    params: Dict[str, Any]
    rows: List[Row]
    summary: Dict[str, Dict[str, Dict[str, Any]]]
    group_by: str = "n"
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    @property
    def bound_violations(self) -> List[Row]:
        """정확히 계산한 값이 적용 가능한 상한/하한을 어긴 행"""
        checks = ("within_bound", "within_upper", "meets_lower", "lb_meets_lower")
        return [row for row in self.rows if any(row.get(key) is False for key in checks)]


def _clean(value: Any) -> Any:
    """JSON 직렬화 가능한 값 (NaN은 None, ±∞는 문자열)"""
    if value is None:
        return None
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def summarize(rows: Sequence[Row], group_by: str = "n") -> Dict[str, Dict[str, Dict[str, Any]]]:
    """
    그룹별 수치 열 요약 통계

    bool 열은 0/1로 바꿔 평균이 비율이 된다. 값이 모두 None인 열은 제외한다.

    Returns:
        {그룹 값: {열: {stat: 값}}}
    """
    if not rows:
        return {}
    frame = pd.DataFrame(list(rows))
    for column in frame.columns:
        values = frame[column].dropna()
        if len(values) and values.map(lambda v: isinstance(v, (bool, np.bool_))).all():
            frame[column] = frame[column].map(lambda v: None if pd.isna(v) else int(v)).astype("float64")
    numeric = [
        column for column in frame.select_dtypes(include="number").columns
        if column != group_by and column not in _ID_COLUMNS and frame[column].notna().any()
    ]
    grouped = frame.groupby(group_by, sort=True)[numeric].agg(list(SUMMARY_STATS))

    summary: Dict[str, Dict[str, Dict[str, Any]]] = {}
    for key, values in grouped.iterrows():
        summary[str(key)] = {
            column: {stat: _clean(values[(column, stat)]) for stat in SUMMARY_STATS}
            for column in numeric
        }
    return summary


def _as_list(value: Union[int, Sequence[int]]) -> List[int]:
    return [value] if isinstance(value, int) else list(value)


def _blank_row(columns: Sequence[str], task: TrialTask) -> Row:
    row: Row = dict.fromkeys(columns)
    row["trial"] = task.trial
    row["seed"] = task.seed
    return row


def _poa_value(result: PoAResult) -> Optional[float]:
    value = result.comparable()
    return None if isinstance(value, float) and math.isnan(value) else float(value)


def _within(result: PoAResult, bound: Fraction) -> Optional[bool]:
    """PoA ≤ bound (균형이 없으면 None)"""
    if result.status is PoAStatus.NO_EQUILIBRIUM:
        return None
    if result.status is PoAStatus.INFINITE:
        return False
    return result.ratio <= bound


def _exact_poa(game, params: EquilibriumParams = EquilibriumParams()) -> Optional[PoAResult]:
    """프로필 공간이 실험 상한 안이면 정확한 PoA, 아니면 None"""
    if game.profile_space_size > settings.EXPERIMENT_PROFILE_CAP:
        return None
    return price_of_anarchy(game, params, cap=settings.EXPERIMENT_PROFILE_CAP)


# ===== 시행 함수 (프로세스 풀에서 pickle 가능한 최상위 함수) =====

def sparse_poa_trial(task: TrialTask) -> List[Row]:
    params = task.params
    n, d = params["n"], parse_rational(params["d"], field="d")
    gnp = GnpParams.sparse(n, d, seed=task.seed)
    graph = gen_gnp(gnp)
    density = max_subgraph_density(graph)
    bound = 1 + 2 * density.value

    row = _blank_row(SPARSE_POA_COLUMNS, task)
    row.update(
        n=n, d=format_rational(d), p=format_rational(gnp.p), edges=len(graph.edges),
        rho=format_rational(density.value), rho_value=float(density.value),
        bound=format_rational(bound), bound_value=float(bound),
    )
    if not params["exact"]:
        return [row]

    game = random_game(
        graph,
        params["colors"],
        RandomGameOptions(rule=RuleFamily.EQUAL_SPLIT, kinds=KindMix.MIXED),
        seed=task.seed,
    )
    poa = _exact_poa(game)
    if poa is not None:
        row.update(poa=poa.label, poa_value=_poa_value(poa), within_bound=_within(poa, bound))

    if density.value > 0:
        instance = density_lb_instance(graph, density.witness)
        row["lb_ratio"] = format_rational(instance.ratio)
        row["lb_is_equilibrium"] = is_epsilon_k_equilibrium(instance.game, instance.equilibrium).is_equilibrium
        lb_poa = _exact_poa(instance.game)
        if lb_poa is not None:
            row["lb_poa"] = lb_poa.label
            row["lb_tight"] = lb_poa.status is PoAStatus.FINITE and lb_poa.ratio == bound
    return [row]


def dense_poa_trial(task: TrialTask) -> List[Row]:
    params = task.params
    n, c = params["n"], params["c"]
    d = parse_rational(params["d"], field="d")
    graph = gen_gnp(GnpParams.dense(n, d, seed=task.seed))
    block = embedding_block(n, c) if params["block"] == "embedded" else None
    instance = matching_lb_instance(graph, c, block)

    ratio = instance.ratio
    lower = matching_lower_bound(instance)
    row = _blank_row(DENSE_POA_COLUMNS, task)
    row.update(
        n=n, d=format_rational(d), c=c, block=params["block"], edges=len(graph.edges),
        q=instance.meta["q"], induced_edges=instance.meta["induced_edges"],
        is_equilibrium=is_epsilon_k_equilibrium(instance.game, instance.equilibrium).is_equilibrium,
        ratio=format_rational(ratio), ratio_value=float(ratio),
        lower_bound=format_rational(lower), lower_value=float(lower),
        meets_lower=ratio >= lower, ratio_over_c=float(ratio / c),
    )
    return [row]


def degree_scaling_trial(task: TrialTask) -> List[Row]:
    params = task.params
    n = params["n"]
    d = parse_rational(params["d"], field="d")
    eps = parse_rational(params["epsilon"], field="epsilon")
    k = params["k"]
    graph = gen_gnp(GnpParams.sparse(n, d, seed=task.seed))
    delta = graph.max_degree
    upper = 2 * eps * delta

    row = _blank_row(DEGREE_SCALING_COLUMNS, task)
    row.update(
        n=n, d=format_rational(d), epsilon=format_rational(eps), k=k,
        edges=len(graph.edges), max_degree=delta,
        scaled_degree=delta * math.log(math.log(n)) / math.log(n) if n >= 3 else None,
        upper_bound=format_rational(upper),
    )
    if not params["small"]:
        return [row]

    colors = params["colors"]
    sets = random_strategy_sets(n, colors, UniformNonemptySubsets(colors), seed=task.seed)
    game = random_game(
        graph,
        colors,
        RandomGameOptions(
            rule=RuleFamily.EQUAL_SPLIT,
            kinds=KindMix.COORDINATION,
            weights=ValueRange.weights(),
            preferences=None,
            strategy_sets=tuple(sets),
        ),
        seed=task.seed,
    )
    poa = _exact_poa(game, EquilibriumParams(eps, k))
    if poa is not None:
        row.update(poa=poa.label, poa_value=_poa_value(poa))
        # Δ = 0이면 상한 0은 의미가 없다
        row["within_upper"] = _within(poa, upper) if delta > 0 else None

    if delta > k - 1:
        instance = degree_lb_instance(graph, eps, k)
        lower = degree_lower_bound(delta, eps, k)
        check = is_epsilon_k_equilibrium(instance.game, instance.equilibrium, EquilibriumParams(eps, k))
        row.update(
            lb_ratio=format_rational(instance.ratio),
            lb_is_equilibrium=check.is_equilibrium,
            lower_bound=format_rational(lower),
            lb_meets_lower=instance.ratio >= lower,
        )
    return [row]


def _local_inequality(game, sets, params: EquilibriumParams, graph) -> Dict[str, int]:
    """공통 색을 가진 매칭 쌍에서 모든 균형이 u_i + u_j ≥ 1/(2ε)를 만족하는지 센다"""
    pairs = [(u, v) for u, v in maximum_matching(graph) if set(sets[u]) & set(sets[v])]
    threshold = 1 / (2 * params.epsilon)
    violations = 0
    if pairs:
        for profile in iter_equilibria(game, params, settings.EXPERIMENT_PROFILE_CAP):
            violations += sum(
                1 for u, v in pairs if utility(game, profile, u) + utility(game, profile, v) < threshold
            )
    return {"local_pairs": len(pairs), "local_violations": violations}


def common_color_trial(task: TrialTask) -> List[Row]:
    params = task.params
    n, k = params["n"], params["k"]
    d = parse_rational(params["d"], field="d")
    eps = parse_rational(params["epsilon"], field="epsilon")
    dist_name = SetDistribution(params["dist"])
    graph = gen_gnp(GnpParams.sparse(n, d, seed=task.seed))

    if dist_name is SetDistribution.PAIR_WITH_COMMON:
        colors = n + 1
        dist = PairWithCommon(colors)
    else:
        colors = params["c"]
        dist = UniformNonemptySubsets(colors)
    sets = random_strategy_sets(n, colors, dist, seed=task.seed)
    game = unit_game(graph, colors, sets)
    equilibrium_params = EquilibriumParams(eps, k)

    row = _blank_row(COMMON_COLOR_COLUMNS, task)
    row.update(
        n=n, d=format_rational(d), c=colors, dist=dist_name.value,
        epsilon=format_rational(eps), k=k, edges=len(graph.edges),
        common_frequency=float(common_color_frequency(sets)),
        claimed_d0=None if dist.claimed_d0 is None else float(dist.claimed_d0),
    )
    poa = _exact_poa(game, equilibrium_params)
    if poa is not None:
        row.update(
            poa=poa.label,
            poa_value=_poa_value(poa),
            equilibria=poa.equilibrium_count,
            no_equilibrium=poa.status is PoAStatus.NO_EQUILIBRIUM,
        )
        if k >= 2:
            row.update(_local_inequality(game, sets, equilibrium_params, graph))

    if dist_name is SetDistribution.PAIR_WITH_COMMON:
        # 모두 s_0이 아닌 색을 고른 프로필
        private = [colors_i[-1] for colors_i in sets]
        value = social_welfare(game, private)
        if value > 0:
            row["private_ratio"] = float(Fraction(len(graph.edges)) / value)
        elif graph.edges:
            row["private_ratio"] = math.inf
    return [row]


class ExperimentService:
    """
    실험 실행 서비스

    [생명주기]
    1. __init__(): 워커 수 지정 (None이면 settings.EXPERIMENT_WORKERS)
    2. run_*(): 시행 태스크 생성 → TrialWorker 실행 → 행 수집 → 요약
    """

    def __init__(self, workers: Optional[int] = None):
        self.worker = TrialWorker(workers)

    def _tasks(self, name: ExperimentName, seed: int, group: int, trials: int, params: Dict[str, Any]) -> List[TrialTask]:
        code = _EXPERIMENT_CODES[name]
        return [
            TrialTask(
                experiment=f"{name.value}/{group}",
                trial=trial,
                seed=derive_seed(seed, Stream.TRIALS, code, group, trial),
                params=dict(params),
            )
            for trial in range(trials)
        ]

    def _run(
        self,
        name: ExperimentName,
        fn,
        task_groups: List[List[TrialTask]],
        seed: int,
        params: Dict[str, Any],
        group_by: str = "n",
    ) -> ExperimentReport:
        rows: List[Row] = []
        failures: List[Dict[str, Any]] = []
        for tasks in task_groups:
            for result in self.worker.run(fn, tasks):
                rows.extend(result.rows)
                if result.status != "success":
                    failures.append({"task_id": result.task_id, "error": result.error})

        report = ExperimentReport(
            name=name.value,
            seed=seed,
            params=params,
            rows=rows,
            summary=summarize(rows, group_by),
            group_by=group_by,
            failures=failures,
        )
        for row in report.bound_violations:
            logger.error(f"[Experiment] 상한/하한 위반 - experiment: {name.value}, trial: {row['trial']}, seed: {row['seed']}")
        logger.info(
            f"[Experiment] 완료 - experiment: {name.value}, rows: {len(rows)}, "
            f"failures: {len(failures)}, violations: {len(report.bound_violations)}"
        )
        return report

    def run_sparse_poa(
        self,
        n_list: Union[int, Sequence[int]],
        d: RationalLike = 2,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        colors: int = 3,
        exact_max_nodes: Optional[int] = None,
    ) -> ExperimentReport:
        """
        희소 G(n, d/n): ρ(G), 상한 1+2ρ

        n ≤ exact_max_nodes이면 무작위 equal-split 게임과 밀도 하한 인스턴스의 정확한 PoA도 기록한다.
        """
        trials = trials if trials is not None else settings.SPARSE_POA_TRIALS
        seed = seed if seed is not None else settings.EXPERIMENT_DEFAULT_SEED
        exact_max = exact_max_nodes if exact_max_nodes is not None else settings.EXACT_POA_MAX_NODES
        d_str = format_rational(parse_rational(d, field="d"))
        name = ExperimentName.SPARSE_POA
        groups = [
            self._tasks(name, seed, n, trials, {"n": n, "d": d_str, "colors": colors, "exact": n <= exact_max})
            for n in _as_list(n_list)
        ]
        params = {"n": _as_list(n_list), "d": d_str, "trials": trials, "colors": colors, "exact_max_nodes": exact_max}
        return self._run(name, sparse_poa_trial, groups, seed, params)

    def run_dense_poa(
        self,
        n: int,
        d: RationalLike = Fraction(1, 2),
        c: Union[int, Sequence[int]] = 16,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        block: str = "all",
    ) -> ExperimentReport:
        """
        조밀 G(n, d): 매칭 하한 인스턴스의 균형 검증, 비율과 비율/c

        Args:
            c: 색 개수 (목록이면 c별로 묶어 요약)
            block: "all"(그래프 전체) 또는 "embedded"(처음 ⌈c/4⌉개 노드)
        """
        trials = trials if trials is not None else settings.DENSE_POA_TRIALS
        seed = seed if seed is not None else settings.EXPERIMENT_DEFAULT_SEED
        if block not in ("all", "embedded"):
            raise InvalidParameterError(f"block은 all 또는 embedded여야 합니다: {block}", {"block": block})
        c_list = _as_list(c)
        for colors in c_list:
            if not 2 <= colors <= n:
                raise InvalidParameterError(f"색 개수는 2 이상 n 이하여야 합니다: c={colors}, n={n}", {"c": colors, "n": n})
        d_str = format_rational(parse_rational(d, field="d"))
        name = ExperimentName.DENSE_POA
        groups = [
            self._tasks(name, seed, colors, trials, {"n": n, "d": d_str, "c": colors, "block": block})
            for colors in c_list
        ]
        params = {"n": n, "d": d_str, "c": c_list, "trials": trials, "block": block}
        return self._run(name, dense_poa_trial, groups, seed, params, group_by="c")

    def run_degree_scaling(
        self,
        n_list: Union[int, Sequence[int]],
        d: RationalLike = 3,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        epsilon: RationalLike = 1,
        k: int = 2,
        colors: int = 3,
        small_max_nodes: Optional[int] = None,
    ) -> ExperimentReport:
        """
        희소 G(n, d/n)의 Δ와 Δ·ln ln n/ln n

        작은 n에서는 무작위 비대칭 equal-split 협조 게임의 정확한 (ε,k)-PoA ≤ 2εΔ와
        차수 하한 인스턴스 비율 ≥ ε(Δ/(k−1) − 1)을 확인한다.
        """
        trials = trials if trials is not None else settings.DEGREE_SCALING_TRIALS
        seed = seed if seed is not None else settings.EXPERIMENT_DEFAULT_SEED
        small_max = small_max_nodes if small_max_nodes is not None else settings.EXACT_POA_MAX_NODES
        eps = parse_rational(epsilon, field="epsilon")
        EquilibriumParams(eps, k)
        d_str, eps_str = format_rational(parse_rational(d, field="d")), format_rational(eps)
        name = ExperimentName.DEGREE_SCALING
        groups = [
            self._tasks(
                name, seed, n, trials,
                {"n": n, "d": d_str, "epsilon": eps_str, "k": k, "colors": colors, "small": n <= small_max},
            )
            for n in _as_list(n_list)
        ]
        params = {"n": _as_list(n_list), "d": d_str, "epsilon": eps_str, "k": k, "trials": trials, "colors": colors}
        return self._run(name, degree_scaling_trial, groups, seed, params)

    def run_common_color(
        self,
        n_list: Union[int, Sequence[int]],
        d: RationalLike = 2,
        c: int = 3,
        dist: Union[str, SetDistribution] = SetDistribution.UNIFORM,
        epsilon: RationalLike = 1,
        k: int = 2,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> ExperimentReport:
        """
        공통 색 성질: 단위 가중치, equal-split, 무작위 전략 집합 게임의 정확한 (ε,k)-PoA

        dist=pair-with-common이면 c = n+1인 {s_0, s_j} 집합을 쓴다 (k = 1 반례 계열).
        균형이 없는 시행은 no_equilibrium으로 표시하고 계속한다.
        """
        trials = trials if trials is not None else settings.COMMON_COLOR_TRIALS
        seed = seed if seed is not None else settings.EXPERIMENT_DEFAULT_SEED
        dist = SetDistribution(dist)
        eps = parse_rational(epsilon, field="epsilon")
        EquilibriumParams(eps, k)
        d_str, eps_str = format_rational(parse_rational(d, field="d")), format_rational(eps)
        name = ExperimentName.COMMON_COLOR
        groups = [
            self._tasks(
                name, seed, n, trials,
                {"n": n, "d": d_str, "c": c, "dist": dist.value, "epsilon": eps_str, "k": k},
            )
            for n in _as_list(n_list)
        ]
        params = {
            "n": _as_list(n_list), "d": d_str, "c": c, "dist": dist.value,
            "epsilon": eps_str, "k": k, "trials": trials,
        }
        return self._run(name, common_color_trial, groups, seed, params)

    def run(self, name: Union[str, ExperimentName], **kwargs) -> ExperimentReport:
        """이름으로 실험 실행"""
        runners = {
            ExperimentName.SPARSE_POA: self.run_sparse_poa,
            ExperimentName.DENSE_POA: self.run_dense_poa,
            ExperimentName.DEGREE_SCALING: self.run_degree_scaling,
            ExperimentName.COMMON_COLOR: self.run_common_color,
        }
        return runners[ExperimentName(name)](**kwargs)
