# Core 모듈
# 환경 설정, 예외, 정확한 유리수 처리
