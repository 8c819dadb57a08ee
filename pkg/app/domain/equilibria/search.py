"""
정확한 균형 탐색
(ε,k)-균형 판정, 사전식 균형 열거, 사회 최적, PoA
"""
import logging
from fractions import Fraction
from itertools import product
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import SearchSpaceExceededError
from app.domain.equilibria.models import (
    DeviationWitness,
    EquilibriumCheck,
    EquilibriumParams,
    OptimumResult,
    PoAResult,
    PoAStatus,
)
from app.domain.execution import create_task_executor
from app.domain.game.builder import validate_profile
from app.domain.game.models import ClusteringGame, StrategyProfile
from app.domain.game.payoffs import PayoffTable


logger = logging.getLogger(__name__)


def ensure_search_space(game: ClusteringGame, cap: Optional[int] = None) -> int:
    """프로필 공간 크기 확인. 상한 초과 시 SearchSpaceExceededError"""
    limit = cap if cap is not None else settings.PROFILE_CAP
    size = game.profile_space_size
    if size > limit:
        logger.warning(f"[Equilibria] 프로필 공간 상한 초과 - size: {size}, cap: {limit}")
        raise SearchSpaceExceededError(
            f"프로필 공간 {size}이(가) 상한 {limit}을(를) 넘습니다",
            {"profile_space": size, "cap": limit},
        )
    return size


def best_responses(game: ClusteringGame, profile: Sequence[int], node: int) -> FrozenSet[int]:
    """argmax_{c ∈ S_i} u_i(s_{-i}, c) (항상 비어 있지 않음)"""
    validate_profile(game, profile)
    values = PayoffTable.from_game(game).color_values(node, profile)
    best = max(value for _, value in values)
    return frozenset(color for color, value in values if value == best)


def connected_coalitions(game: ClusteringGame, k: int) -> List[Tuple[int, ...]]:
    """
    크기 2..k의 연결된 연합 목록 (크기, 구성원 사전식 순)

    연결되지 않은 연합이 모두 개선되면 각 연결 성분도 단독으로 개선되므로
    연결 연합만 확인하면 충분하다.
    """
    adjacency = game.graph.adjacency
    layers = [{(i,) for i in range(game.n)}]
    for _ in range(2, k + 1):
        grown = set()
        for members in layers[-1]:
            member_set = set(members)
            for node in members:
                for other in adjacency[node]:
                    if other not in member_set:
                        grown.add(tuple(sorted(member_set | {other})))
        layers.append(grown)
    return [c for layer in layers[1:] for c in sorted(layer)]


def _unilateral_witness(
    table: PayoffTable, choices: Sequence[int], node: int, params: EquilibriumParams
) -> Optional[DeviationWitness]:
    current = table.utility(node, choices)
    eps_num, eps_den = params.epsilon.numerator, params.epsilon.denominator
    best_color, best_value = None, None
    for color, value in table.color_values(node, choices):
        if value * eps_den > eps_num * current and (best_value is None or value > best_value):
            best_color, best_value = color, value
    if best_color is None:
        return None
    return DeviationWitness(
        coalition=(node,),
        deviation=(best_color,),
        before=(table.to_fraction(current),),
        after=(table.to_fraction(best_value),),
    )


def _coalition_witness(
    table: PayoffTable,
    choices: Sequence[int],
    coalition: Tuple[int, ...],
    params: EquilibriumParams,
) -> Optional[DeviationWitness]:
    eps_num, eps_den = params.epsilon.numerator, params.epsilon.denominator
    before = [table.utility(j, choices) for j in coalition]
    current = tuple(choices[j] for j in coalition)
    work = list(choices)
    for deviation in product(*(table.strategies[j] for j in coalition)):
        if deviation == current:
            continue
        for j, color in zip(coalition, deviation):
            work[j] = color
        after = [table.utility(j, work) for j in coalition]
        if all(a * eps_den > eps_num * b for a, b in zip(after, before)):
            return DeviationWitness(
                coalition=coalition,
                deviation=deviation,
                before=tuple(table.to_fraction(b) for b in before),
                after=tuple(table.to_fraction(a) for a in after),
            )
    return None


def is_epsilon_k_equilibrium(
    game: ClusteringGame,
    profile: Sequence[int],
    params: EquilibriumParams = EquilibriumParams(),
    coalition_cap: Optional[int] = None,
) -> EquilibriumCheck:
    """
    (ε,k)-균형 판정

    크기 ≤ k인 연합의 공동 이탈로 모든 구성원이 ε배를 초과해 개선되면 No.

    Returns:
        EquilibriumCheck (No이면 가장 작은 연합의 witness)
    """
    profile = validate_profile(game, profile)
    params.validate_for(game, coalition_cap)
    table = PayoffTable.from_game(game)
    for node in range(game.n):
        witness = _unilateral_witness(table, profile, node, params)
        if witness is not None:
            return EquilibriumCheck(False, witness)
    if params.k >= 2:
        for coalition in connected_coalitions(game, params.k):
            witness = _coalition_witness(table, profile, coalition, params)
            if witness is not None:
                return EquilibriumCheck(False, witness)
    return EquilibriumCheck(True)


def iter_equilibria(
    game: ClusteringGame,
    params: EquilibriumParams = EquilibriumParams(),
    cap: Optional[int] = None,
    first_colors: Optional[Sequence[int]] = None,
    coalition_cap: Optional[int] = None,
) -> Iterator[StrategyProfile]:
    """
    (ε,k)-균형을 사전식 순서로 생성

    노드 0..n-1 순서로 색을 정하고, 어떤 노드와 그 이웃이 모두 정해지는 즉시
    단독 이탈 조건을 확인해 가지치기한다. 완성된 프로필에서만 연합 이탈을 확인한다.

    Args:
        first_colors: 노드 0의 색을 이 목록으로 제한 (블록 분할용)
    """
    ensure_search_space(game, cap)
    params.validate_for(game, coalition_cap)
    table = PayoffTable.from_game(game)
    n = game.n
    coalitions = connected_coalitions(game, params.k) if params.k >= 2 else []
    eps_num, eps_den = params.epsilon.numerator, params.epsilon.denominator

    # 노드 d까지 정해졌을 때 확인 가능한 노드들
    ready: List[List[int]] = [[] for _ in range(n)]
    for node in range(n):
        last = max([node] + [j for j, _, _ in table.incident[node]])
        ready[last].append(node)

    strategies = list(table.strategies)
    if first_colors is not None:
        strategies[0] = tuple(c for c in strategies[0] if c in set(first_colors))

    choices = [0] * n

    def extend(depth: int) -> Iterator[StrategyProfile]:
        for color in strategies[depth]:
            choices[depth] = color
            if any(table.improves(node, choices, eps_num, eps_den) for node in ready[depth]):
                continue
            if depth + 1 < n:
                yield from extend(depth + 1)
            elif not any(_coalition_witness(table, choices, c, params) for c in coalitions):
                yield StrategyProfile(choices)

    yield from extend(0)


def _enumerate_block(args: Tuple[ClusteringGame, EquilibriumParams, Optional[int], int]) -> List[StrategyProfile]:
    game, params, cap, color = args
    return list(iter_equilibria(game, params, cap, first_colors=[color]))


def enumerate_equilibria(
    game: ClusteringGame,
    params: EquilibriumParams = EquilibriumParams(),
    cap: Optional[int] = None,
    workers: Optional[int] = 1,
) -> List[StrategyProfile]:
    """
    모든 (ε,k)-균형을 사전식 순서로 반환

    workers ≥ 2이면 노드 0의 색별 블록을 병렬로 계산하고 블록 순서대로 합친다.

    Raises:
        SearchSpaceExceededError: Π|S_i| > cap
    """
    size = ensure_search_space(game, cap)
    blocks = [(game, params, cap, color) for color in game.strategy_sets[0]]
    with create_task_executor(workers) as executor:
        results = executor.map(_enumerate_block, blocks)
    equilibria = [profile for block in results for profile in block]
    logger.info(
        f"[Equilibria] 균형 열거 완료 - profiles: {size}, equilibria: {len(equilibria)}, "
        f"epsilon: {params.epsilon}, k: {params.k}"
    )
    return equilibria


def social_optimum(game: ClusteringGame, cap: Optional[int] = None) -> OptimumResult:
    """
    사회 후생 최대화 프로필 (사전식으로 가장 작은 최대화 프로필)

    분기 한정: 남은 노드의 최대 선호도와 미결정 간선 가중치 합을 상한으로 쓴다.
    """
    ensure_search_space(game, cap)
    table = PayoffTable.from_game(game)
    n = game.n

    edges_at: List[List[Tuple[int, bool, int]]] = [[] for _ in range(n)]
    for u, v, is_coord, weight in table.edges:
        later, earlier = max(u, v), min(u, v)
        edges_at[later].append((earlier, is_coord, weight))

    remaining = [0] * (n + 1)
    for node in range(n - 1, -1, -1):
        best_pref = max(table.preferences[node].get(c, 0) for c in table.strategies[node])
        remaining[node] = remaining[node + 1] + best_pref + sum(w for _, _, w in edges_at[node])

    choices = [0] * n
    best: List = [None, None]  # [value, profile]

    def extend(depth: int, value: int) -> None:
        if depth == n:
            if best[0] is None or value > best[0]:
                best[0], best[1] = value, StrategyProfile(choices)
            return
        if best[0] is not None and value + remaining[depth] <= best[0]:
            return
        prefs = table.preferences[depth]
        for color in table.strategies[depth]:
            choices[depth] = color
            gain = prefs.get(color, 0)
            for other, is_coord, weight in edges_at[depth]:
                if (choices[other] == color) == is_coord:
                    gain += weight
            extend(depth + 1, value + gain)

    extend(0, 0)
    return OptimumResult(best[1], table.to_fraction(best[0]))


def price_of_anarchy(
    game: ClusteringGame,
    params: EquilibriumParams = EquilibriumParams(),
    cap: Optional[int] = None,
) -> PoAResult:
    """
    (ε,k)-PoA = max_{s ∈ (ε,k)-NE} u(s*)/u(s)

    - 균형이 없으면 NO_EQUILIBRIUM
    - u(s*) = 0이면 1
    - 어떤 균형의 u(s) = 0이고 u(s*) > 0이면 INFINITE
    """
    optimum = social_optimum(game, cap)
    table = PayoffTable.from_game(game)
    count = 0
    worst_value: Optional[int] = None
    worst_profile: Optional[StrategyProfile] = None
    for profile in iter_equilibria(game, params, cap):
        count += 1
        value = table.welfare(profile)
        if worst_value is None or value < worst_value:
            worst_value, worst_profile = value, profile

    if worst_value is None:
        logger.info(f"[Equilibria] 균형 없음 - epsilon: {params.epsilon}, k: {params.k}")
        return PoAResult(PoAStatus.NO_EQUILIBRIUM, None, None, None, optimum, 0)

    worst = table.to_fraction(worst_value)
    if optimum.value == 0:
        status, ratio = PoAStatus.FINITE, Fraction(1)
    elif worst == 0:
        status, ratio = PoAStatus.INFINITE, None
    else:
        status, ratio = PoAStatus.FINITE, optimum.value / worst
    logger.debug(
        f"[Equilibria] PoA 계산 완료 - status: {status.value}, ratio: {ratio}, equilibria: {count}"
    )
    return PoAResult(status, ratio, worst_profile, worst, optimum, count)
