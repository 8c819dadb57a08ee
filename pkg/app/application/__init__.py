"""
애플리케이션 계층
Monte Carlo 실험 서비스와 시행 Worker
"""
