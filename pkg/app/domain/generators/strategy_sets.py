"""
전략 집합 분포와 공통 색 성질
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import InvalidParameterError
from app.domain.generators.rng import Stream, make_rng


logger = logging.getLogger(__name__)

ColorSet = Tuple[int, ...]


@dataclass(frozen=True)
class StrategySetDistribution(ABC):
    """
    노드별 전략 집합 분포 F

    claimed_d0: 두 독립 표본이 공통 색을 가질 확률의 하한 (보장되지 않으면 None)
    """
    color_count: int

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> ColorSet:
        """노드 하나의 전략 집합 추출"""

    @property
    def claimed_d0(self) -> Optional[Fraction]:
        return None


@dataclass(frozen=True)
class UniformNonemptySubsets(StrategySetDistribution):
    """{1..c}의 공집합이 아닌 2^c − 1개 부분집합 중 균등 추출"""

    def sample(self, rng: np.random.Generator) -> ColorSet:
        mask = int(rng.integers(1, 2 ** self.color_count))
        return tuple(color + 1 for color in range(self.color_count) if mask >> color & 1)

    @property
    def claimed_d0(self) -> Fraction:
        return uniform_common_color_probability(self.color_count)


@dataclass(frozen=True)
class PairWithCommon(StrategySetDistribution):
    """
    {s_0, s_j} 형태의 집합 (s_0 = 색 1, s_j는 2..c에서 균등)

    모든 두 표본이 s_0을 공유하므로 d_0 = 1.
    """

    def sample(self, rng: np.random.Generator) -> ColorSet:
        if self.color_count == 1:
            return (1,)
        return (1, int(rng.integers(2, self.color_count + 1)))

    @property
    def claimed_d0(self) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class CustomSets(StrategySetDistribution):
    """지정한 집합 목록에서 가중치 비례 추출"""
    sets: Tuple[ColorSet, ...] = ()
    weights: Tuple[Fraction, ...] = ()
    claimed: Optional[Fraction] = None

    def __post_init__(self):
        if not self.sets:
            raise InvalidParameterError("집합 목록이 비어 있습니다")
        for colors in self.sets:
            if not colors or any(not 1 <= c <= self.color_count for c in colors):
                raise InvalidParameterError(f"잘못된 전략 집합입니다: {colors}", {"set": list(colors)})
        if self.weights and len(self.weights) != len(self.sets):
            raise InvalidParameterError("가중치 개수가 집합 개수와 다릅니다")

    def sample(self, rng: np.random.Generator) -> ColorSet:
        if self.weights:
            total = sum(self.weights)
            probs = [float(w / total) for w in self.weights]
            index = int(rng.choice(len(self.sets), p=probs))
        else:
            index = int(rng.integers(len(self.sets)))
        return tuple(sorted(self.sets[index]))

    @property
    def claimed_d0(self) -> Optional[Fraction]:
        return self.claimed


def uniform_common_color_probability(c: int) -> Fraction:
    """균등 비공 부분집합 두 개가 색을 공유할 확률 1 − (3^c − 2^{c+1} + 1)/(2^c − 1)^2"""
    disjoint = 3 ** c - 2 ** (c + 1) + 1
    return 1 - Fraction(disjoint, (2 ** c - 1) ** 2)


def random_strategy_sets(
    n: int, c: int, dist: Optional[StrategySetDistribution] = None, seed: int = 0
) -> List[ColorSet]:
    """
    노드별 독립 추출 (c = 1이면 모두 {1})

    Returns:
        정렬된 색 튜플 목록
    """
    if c < 1:
        raise InvalidParameterError(f"색 개수는 양수여야 합니다: {c}", {"colors": c})
    dist = dist or UniformNonemptySubsets(c)
    if dist.color_count != c:
        raise InvalidParameterError(
            f"분포의 색 개수({dist.color_count})가 c({c})와 다릅니다", {"colors": c}
        )
    rng = make_rng(seed, Stream.STRATEGY_SETS)
    return [dist.sample(rng) for _ in range(n)]


def pair_with_common_sets(n: int) -> List[ColorSet]:
    """노드 i에 {s_0, s_i} = {1, i+2} (c = n+1). 공통 색은 s_0뿐이다."""
    return [(1, node + 2) for node in range(n)]


def common_color_frequency(sets: Sequence[ColorSet]) -> Fraction:
    """노드 쌍 중 공통 색을 가진 쌍의 비율 (쌍이 없으면 1)"""
    pairs = list(combinations(sets, 2))
    if not pairs:
        return Fraction(1)
    shared = sum(1 for a, b in pairs if set(a) & set(b))
    return Fraction(shared, len(pairs))
