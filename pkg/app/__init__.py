# Clustering Games Analyzer
# 네트워크 위 클러스터링 게임의 균형, PoA, Shapley 분배 규칙 분석

__version__ = "0.1.0"
