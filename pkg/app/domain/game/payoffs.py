"""
정수 스케일 효용 테이블
모든 몫과 선호도에 공통 분모 L을 곱해 정수로 바꾼다. 비교는 정확하며 L로 나누면 원래 값이 된다.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence, Tuple

from app.domain.game.enums import EdgeKind
from app.domain.game.models import ClusteringGame


@dataclass(frozen=True)
class PayoffTable:
    """탐색용 정수 효용 테이블"""
    scale: int
    strategies: Tuple[Tuple[int, ...], ...]
    preferences: Tuple[Dict[int, int], ...]
    incident: Tuple[Tuple[Tuple[int, bool, int], ...], ...]  # (이웃, 협조 여부, 정수 몫)
    edges: Tuple[Tuple[int, int, bool, int], ...]  # (u, v, 협조 여부, 정수 가중치)

    @classmethod
    def from_game(cls, game: ClusteringGame) -> "PayoffTable":
        values: List[Fraction] = [p for pair in game.payoffs for p in pair]
        for prefs in game.preferences:
            values.extend(prefs.values())
        scale = lcm(1, *(v.denominator for v in values)) if values else 1

        def scaled(value: Fraction) -> int:
            return int(value * scale)

        incident: List[List[Tuple[int, bool, int]]] = [[] for _ in range(game.n)]
        edges: List[Tuple[int, int, bool, int]] = []
        for edge, (pay_u, pay_v) in zip(game.graph.edges, game.payoffs):
            is_coord = edge.kind is EdgeKind.COORDINATION
            if pay_u > 0:
                incident[edge.u].append((edge.v, is_coord, scaled(pay_u)))
            if pay_v > 0:
                incident[edge.v].append((edge.u, is_coord, scaled(pay_v)))
            if pay_u + pay_v > 0:
                edges.append((edge.u, edge.v, is_coord, scaled(pay_u) + scaled(pay_v)))

        prefs = tuple(
            {color: scaled(value) for color, value in (game.preferences[i] if game.preferences else {}).items()}
            for i in range(game.n)
        )
        return cls(
            scale=scale,
            strategies=game.strategy_sets,
            preferences=prefs,
            incident=tuple(tuple(bucket) for bucket in incident),
            edges=tuple(edges),
        )

    @property
    def n(self) -> int:
        return len(self.strategies)

    def to_fraction(self, value: int) -> Fraction:
        return Fraction(value, self.scale)

    def utility(self, node: int, choices: Sequence[int]) -> int:
        color = choices[node]
        total = self.preferences[node].get(color, 0)
        for neighbor, is_coord, pay in self.incident[node]:
            if (choices[neighbor] == color) == is_coord:
                total += pay
        return total

    def color_values(self, node: int, choices: Sequence[int]) -> List[Tuple[int, int]]:
        """전략 집합의 각 색에 대해 (색, 그 색으로 바꿨을 때의 정수 효용)"""
        coord: Dict[int, int] = {}
        anti: Dict[int, int] = {}
        anti_total = 0
        for neighbor, is_coord, pay in self.incident[node]:
            color = choices[neighbor]
            if is_coord:
                coord[color] = coord.get(color, 0) + pay
            else:
                anti_total += pay
                anti[color] = anti.get(color, 0) + pay
        prefs = self.preferences[node]
        return [
            (c, prefs.get(c, 0) + coord.get(c, 0) + anti_total - anti.get(c, 0))
            for c in self.strategies[node]
        ]

    def improves(self, node: int, choices: Sequence[int], eps_num: int, eps_den: int) -> bool:
        """단독 이탈로 ε배를 초과하는 개선이 가능한지"""
        current = self.utility(node, choices)
        threshold = eps_num * current
        return any(value * eps_den > threshold for _, value in self.color_values(node, choices))

    def welfare(self, choices: Sequence[int]) -> int:
        return sum(self.utility(i, choices) for i in range(self.n))
