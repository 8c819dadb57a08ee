"""
스키마 (DTO)
게임 파일, CLI 결과, 에러 응답
"""
