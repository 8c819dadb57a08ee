# Tests 모듈

