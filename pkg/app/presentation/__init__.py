"""
프레젠테이션 계층 (Presentation Layer)
- CLI, 입출력 스키마
"""
