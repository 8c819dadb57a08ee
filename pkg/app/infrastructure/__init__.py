"""
인프라 계층 (Infrastructure Layer)
- 게임 파일, 실험 보고서 저장
"""
