"""
최선 응답 동역학과 최선 응답 그래프 순환 탐지
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import SearchSpaceExceededError
from app.domain.equilibria.models import (
    BrDynamicsResult,
    BrGraphResult,
    BrMove,
    BrOutcome,
    SchedulerPolicy,
)
from app.domain.equilibria.search import ensure_search_space
from app.domain.game.builder import validate_profile
from app.domain.game.models import ClusteringGame, StrategyProfile
from app.domain.game.payoffs import PayoffTable
from app.domain.generators.rng import Stream, make_rng


logger = logging.getLogger(__name__)


@dataclass
class BrScheduler:
    """
    이동할 플레이어를 고르는 스케줄러 (상태 보유)

    - round-robin: cursor부터 순환하며 처음 만나는 개선 가능 플레이어, 이후 cursor는 그 다음
    - lowest-improving-id: 개선 가능한 플레이어 중 가장 작은 id
    - seeded-random: 시드 고정 PCG64로 개선 가능 플레이어 중 균등 선택
    """
    policy: SchedulerPolicy = SchedulerPolicy.ROUND_ROBIN
    seed: int = 0
    cursor: int = 0
    _rng: Optional[np.random.Generator] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.policy = SchedulerPolicy(self.policy)
        if self.policy is SchedulerPolicy.SEEDED_RANDOM:
            self._rng = make_rng(self.seed, Stream.SCHEDULER)

    def choose(self, improving: Sequence[int], n: int) -> int:
        if self.policy is SchedulerPolicy.LOWEST_IMPROVING_ID:
            return min(improving)
        if self.policy is SchedulerPolicy.SEEDED_RANDOM:
            return improving[int(self._rng.integers(len(improving)))]
        player = min(improving, key=lambda i: (i - self.cursor) % n)
        self.cursor = (player + 1) % n
        return player


def _strict_best_moves(table: PayoffTable, choices: Sequence[int], node: int) -> List[int]:
    """엄격히 개선되는 최선 응답 색 목록 (현재 색이 최선이면 빈 목록)"""
    values = table.color_values(node, choices)
    best = max(value for _, value in values)
    if best <= table.utility(node, choices):
        return []
    return [color for color, value in values if value == best]


def br_step(
    game: ClusteringGame,
    profile: Sequence[int],
    scheduler: Optional[BrScheduler] = None,
    table: Optional[PayoffTable] = None,
) -> Optional[BrMove]:
    """
    엄격한 최선 응답 이동 한 번

    이동하는 플레이어는 최선 응답 중 가장 작은 색을 고른다.

    Returns:
        BrMove, 아무도 개선할 수 없으면 None (Stable)
    """
    profile = validate_profile(game, profile)
    scheduler = scheduler or BrScheduler()
    table = table or PayoffTable.from_game(game)
    moves: Dict[int, List[int]] = {}
    for node in range(game.n):
        colors = _strict_best_moves(table, profile, node)
        if colors:
            moves[node] = colors
    if not moves:
        return None
    player = scheduler.choose(sorted(moves), game.n)
    color = moves[player][0]
    return BrMove(player, color, profile.with_choice(player, color))


def run_br_dynamics(
    game: ClusteringGame,
    start: Sequence[int],
    scheduler: Optional[BrScheduler] = None,
    max_steps: Optional[int] = None,
) -> BrDynamicsResult:
    """
    수렴하거나 이전 프로필로 돌아올 때까지 br_step 반복

    Raises:
        SearchSpaceExceededError: max_steps 안에 판정이 나지 않을 때
    """
    limit = max_steps if max_steps is not None else settings.BR_MAX_STEPS
    scheduler = scheduler or BrScheduler()
    table = PayoffTable.from_game(game)
    profile = validate_profile(game, start)
    history: List[StrategyProfile] = [profile]
    seen: Dict[StrategyProfile, int] = {profile: 0}
    for step in range(limit):
        move = br_step(game, profile, scheduler, table)
        if move is None:
            logger.debug(f"[BrDynamics] 수렴 - steps: {step}, policy: {scheduler.policy.value}")
            return BrDynamicsResult(BrOutcome.CONVERGED, step, profile=profile)
        profile = move.profile
        if profile in seen:
            cycle = tuple(history[seen[profile]:]) + (profile,)
            logger.info(f"[BrDynamics] 순환 발견 - length: {len(cycle) - 1}, steps: {step + 1}")
            return BrDynamicsResult(BrOutcome.CYCLE_FOUND, step + 1, cycle=cycle)
        seen[profile] = len(history)
        history.append(profile)
    raise SearchSpaceExceededError(
        f"최선 응답 동역학이 {limit} 스텝 안에 끝나지 않았습니다", {"max_steps": limit}
    )


def _successors(table: PayoffTable, profile: StrategyProfile) -> Iterator[StrategyProfile]:
    for node in range(table.n):
        for color in _strict_best_moves(table, profile, node):
            yield profile.with_choice(node, color)


def br_graph_acyclic(game: ClusteringGame, cap: Optional[int] = None) -> BrGraphResult:
    """
    최선 응답 그래프(프로필 간 엄격한 최선 응답 이동)의 순환 여부

    사전식 순서의 모든 시작 프로필에서 반복 DFS를 수행한다.

    Returns:
        BrGraphResult (순환이 있으면 첫 프로필로 돌아오는 프로필 열)
    """
    ensure_search_space(game, cap)
    table = PayoffTable.from_game(game)
    finished = set()
    for start in product(*table.strategies):
        start = StrategyProfile(start)
        if start in finished:
            continue
        path: List[StrategyProfile] = [start]
        on_path: Dict[StrategyProfile, int] = {start: 0}
        stack = [_successors(table, start)]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                done = path.pop()
                del on_path[done]
                finished.add(done)
                continue
            if nxt in on_path:
                cycle = tuple(path[on_path[nxt]:]) + (nxt,)
                logger.info(f"[BrGraph] 순환 발견 - length: {len(cycle) - 1}")
                return BrGraphResult(False, cycle, len(finished) + len(path))
            if nxt in finished:
                continue
            on_path[nxt] = len(path)
            path.append(nxt)
            stack.append(_successors(table, nxt))
    logger.debug(f"[BrGraph] 비순환 확인 - profiles: {len(finished)}")
    return BrGraphResult(True, (), len(finished))
