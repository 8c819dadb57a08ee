"""
Pytest 설정 및 Fixtures
"""
import pytest

from app.core.config import settings
from app.domain.game.models import Graph


# 테스트용 설정 (전역 settings를 직접 바꾸고 테스트 후 복구)
@pytest.fixture(autouse=True)
def setup_env(monkeypatch):
    """테스트 환경 설정"""
    monkeypatch.setenv("DEBUG", "false")
    monkeypatch.setattr(settings, "EXPERIMENT_WORKERS", 1)
    monkeypatch.setattr(settings, "PROFILE_CAP", 2_000_000)
    monkeypatch.setattr(settings, "EXPERIMENT_PROFILE_CAP", 50_000)


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def k4() -> Graph:
    return Graph.from_pairs(4, [(u, v) for v in range(4) for u in range(v)])


@pytest.fixture
def c5() -> Graph:
    return Graph.from_pairs(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_pairs(10, outer + spokes + inner)


@pytest.fixture
def grid3() -> Graph:
    """3×3 격자 (노드 3r + c)"""
    pairs = []
    for r in range(3):
        for c in range(3):
            node = 3 * r + c
            if c < 2:
                pairs.append((node, node + 1))
            if r < 2:
                pairs.append((node, node + 3))
    return Graph.from_pairs(9, pairs)


@pytest.fixture
def star5() -> Graph:
    """K_{1,5} (중심 0)"""
    return Graph.from_pairs(6, [(0, i) for i in range(1, 6)])
