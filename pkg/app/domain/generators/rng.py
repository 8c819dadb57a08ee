"""
이름 붙은 난수 스트림

모든 난수는 SeedSequence(entropy=seed, spawn_key=(stream, *path)) + PCG64로 만든다.
같은 (seed, stream, path)는 플랫폼과 무관하게 같은 난수열을 낸다.
"""
import enum
from typing import Tuple

import numpy as np


class Stream(enum.IntEnum):
    """용도별 스트림 번호 (값을 바꾸면 기존 결과가 재현되지 않음)"""
    GRAPH = 1
    WEIGHTS = 2
    PREFERENCES = 3
    SHARES = 4
    KINDS = 5
    STRATEGY_SETS = 6
    TRIALS = 7
    SCHEDULER = 8


def seed_sequence(seed: int, stream: Stream, *path: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),) + tuple(int(p) for p in path))


def make_rng(seed: int, stream: Stream, *path: int) -> np.random.Generator:
    """(seed, stream, path)에 대한 독립 PCG64 생성기"""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, stream, *path)))


def derive_seed(seed: int, stream: Stream, *path: int) -> int:
    """하위 작업용 64비트 시드 (예: 실험 trial별 시드)"""
    state: Tuple[int, int] = seed_sequence(seed, stream, *path).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])
