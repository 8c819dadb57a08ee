"""
균형 분석 타입 정의
"""
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from app.core.config import settings
from app.core.exceptions import CoalitionCapExceededError, InvalidParameterError
from app.core.rational import format_rational
from app.domain.game.models import ClusteringGame, StrategyProfile


@dataclass(frozen=True)
class EquilibriumParams:
    """(ε,k)-균형 파라미터: ε ≥ 1, 1 ≤ k ≤ n"""
    epsilon: Fraction = Fraction(1)
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon < 1:
            raise InvalidParameterError(f"epsilon은 1 이상이어야 합니다: {self.epsilon}", {"epsilon": str(self.epsilon)})
        if self.k < 1:
            raise InvalidParameterError(f"k는 1 이상이어야 합니다: {self.k}", {"k": self.k})

    def validate_for(self, game: ClusteringGame, coalition_cap: Optional[int] = None) -> None:
        cap = coalition_cap if coalition_cap is not None else settings.COALITION_CAP
        if self.k > game.n:
            raise InvalidParameterError(f"k({self.k})가 노드 수({game.n})보다 큽니다", {"k": self.k, "n": game.n})
        if self.k > cap:
            raise CoalitionCapExceededError(
                f"연합 크기 상한 초과: k={self.k}, cap={cap}", {"k": self.k, "cap": cap}
            )


@dataclass(frozen=True)
class DeviationWitness:
    """연합 K의 공동 이탈. 모든 구성원이 u_j(이탈) > ε·u_j(s)"""
    coalition: Tuple[int, ...]
    deviation: Tuple[int, ...]
    before: Tuple[Fraction, ...]
    after: Tuple[Fraction, ...]

    @property
    def improvement_factors(self) -> Tuple[Union[Fraction, float], ...]:
        """구성원별 u_after/u_before (이전 효용이 0이면 math.inf)"""
        return tuple(
            math.inf if before == 0 else after / before
            for before, after in zip(self.before, self.after)
        )


@dataclass(frozen=True)
class EquilibriumCheck:
    """균형 판정 결과 (No이면 witness 포함)"""
    is_equilibrium: bool
    witness: Optional[DeviationWitness] = None

    def __bool__(self) -> bool:
        return self.is_equilibrium


@dataclass(frozen=True)
class OptimumResult:
    """사회 최적 프로필과 후생"""
    profile: StrategyProfile
    value: Fraction


class PoAStatus(str, enum.Enum):
    """PoA 결과 종류"""
    FINITE = "finite"
    INFINITE = "inf"
    NO_EQUILIBRIUM = "none"


@dataclass(frozen=True)
class PoAResult:
    """(ε,k)-PoA 계산 결과"""
    status: PoAStatus
    ratio: Optional[Fraction]
    worst_equilibrium: Optional[StrategyProfile]
    worst_value: Optional[Fraction]
    optimum: OptimumResult
    equilibrium_count: int

    @property
    def label(self) -> str:
        """직렬화 값 ("p/q", "inf", "none")"""
        if self.status is PoAStatus.FINITE:
            return format_rational(self.ratio)
        return self.status.value

    def comparable(self) -> Union[Fraction, float]:
        """상한 비교용 값 (Infinite는 math.inf, 균형 없음은 NaN)"""
        if self.status is PoAStatus.FINITE:
            return self.ratio
        if self.status is PoAStatus.INFINITE:
            return math.inf
        return math.nan


class SchedulerPolicy(str, enum.Enum):
    """최선 응답 동역학 스케줄링 정책"""
    ROUND_ROBIN = "round-robin"
    LOWEST_IMPROVING_ID = "lowest-improving-id"
    SEEDED_RANDOM = "seeded-random"


@dataclass(frozen=True)
class BrMove:
    """엄격한 최선 응답 이동 한 번"""
    player: int
    color: int
    profile: StrategyProfile


class BrOutcome(str, enum.Enum):
    CONVERGED = "converged"
    CYCLE_FOUND = "cycle"


@dataclass(frozen=True)
class BrDynamicsResult:
    """
    최선 응답 동역학 결과

    CONVERGED: profile은 아무도 엄격히 개선할 수 없는 프로필
    CYCLE_FOUND: cycle은 첫 프로필로 돌아오는 프로필 열
    """
    outcome: BrOutcome
    steps: int
    profile: Optional[StrategyProfile] = None
    cycle: Tuple[StrategyProfile, ...] = ()


@dataclass(frozen=True)
class BrGraphResult:
    """최선 응답 그래프 순환 판정 결과"""
    acyclic: bool
    cycle: Tuple[StrategyProfile, ...] = ()
    explored: int = 0
