"""
Erdős–Rényi G(n, p) 생성기
"""
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import List, Tuple

import numpy as np

from app.core.exceptions import InvalidParameterError
from app.core.rational import RationalLike, parse_rational
from app.domain.game.builder import build_graph
from app.domain.game.models import Edge, Graph
from app.domain.generators.rng import Stream, make_rng


logger = logging.getLogger(__name__)


class Regime(str, enum.Enum):
    SPARSE = "sparse"  # p = d/n
    DENSE = "dense"  # p = d


@dataclass(frozen=True)
class GnpParams:
    """G(n, p) 파라미터. p는 regime과 d로 정해진다."""
    n: int
    d: Fraction
    regime: Regime = Regime.SPARSE
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(self, "regime", Regime(self.regime))
        if self.n < 1:
            raise InvalidParameterError(f"노드 수는 양수여야 합니다: {self.n}", {"n": self.n})
        if self.d < 0:
            raise InvalidParameterError(f"d는 0 이상이어야 합니다: {self.d}", {"d": str(self.d)})
        if self.regime is Regime.DENSE and self.d > 1:
            raise InvalidParameterError(f"dense 영역에서 d는 1 이하여야 합니다: {self.d}", {"d": str(self.d)})

    @classmethod
    def sparse(cls, n: int, d: RationalLike, seed: int = 0) -> "GnpParams":
        return cls(n, parse_rational(d, field="d"), Regime.SPARSE, seed)

    @classmethod
    def dense(cls, n: int, d: RationalLike, seed: int = 0) -> "GnpParams":
        return cls(n, parse_rational(d, field="d"), Regime.DENSE, seed)

    @property
    def p(self) -> Fraction:
        """간선 확률 (sparse에서 d/n > 1이면 1로 자름)"""
        if self.regime is Regime.DENSE:
            return self.d
        return min(Fraction(1), self.d / self.n)


def _pair_from_index(index: int) -> Tuple[int, int]:
    """사전식 쌍 번호 → (u, v), u < v. v(v-1)/2 + u 인코딩"""
    v = (1 + isqrt(1 + 8 * index)) // 2
    if v * (v - 1) // 2 > index:
        v -= 1
    u = index - v * (v - 1) // 2
    return u, v


def gnp_pairs(n: int, p: Fraction, rng: np.random.Generator) -> List[Tuple[int, int]]:
    """
    각 쌍을 독립적으로 확률 p로 포함

    간선 수 K ~ Binomial(C(n,2), p)를 뽑은 뒤 K개의 쌍을 비복원 균등 추출한다.
    각 쌍의 포함 여부는 독립 Bernoulli(p)와 같은 분포가 된다.
    """
    total = comb(n, 2)
    if total == 0 or p == 0:
        return []
    if p == 1:
        return [(u, v) for v in range(n) for u in range(v)]
    count = int(rng.binomial(total, float(p)))
    chosen = rng.choice(total, size=count, replace=False)
    return sorted(_pair_from_index(int(index)) for index in chosen)


def gen_gnp(params: GnpParams) -> Graph:
    """
    시드 고정 G(n, p) 그래프 (모든 간선은 협조, 가중치 1)

    Args:
        params: GnpParams

    Returns:
        Graph
    """
    rng = make_rng(params.seed, Stream.GRAPH)
    pairs = gnp_pairs(params.n, params.p, rng)
    logger.debug(
        f"[Generators] G(n,p) 생성 - n: {params.n}, p: {params.p}, seed: {params.seed}, edges: {len(pairs)}"
    )
    return build_graph(params.n, [Edge(u, v) for u, v in pairs])
