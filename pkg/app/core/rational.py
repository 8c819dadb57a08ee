"""
정확한 유리수 파싱/직렬화 유틸리티
"""
import re
from fractions import Fraction
from typing import Any, Optional, Union

from app.core.exceptions import InvalidRationalError


RationalLike = Union[int, str, Fraction]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value: Any, field: Optional[str] = None) -> Fraction:
    """
    "p/q" 문자열, 정수 문자열, 정수, Fraction을 정확한 유리수로 변환

    소수(float, "0.5")는 정확성을 위해 거부합니다.

    Args:
        value: 입력 값
        field: 에러 메시지에 포함할 필드 이름

    Returns:
        Fraction
    """
    if isinstance(value, bool):
        raise InvalidRationalError(
            f"유리수가 아닌 값입니다: {value!r}", {"field": field, "value": value}
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value)
        if match:
            numerator = int(match.group(1))
            denominator = int(match.group(2)) if match.group(2) is not None else 1
            if denominator == 0:
                raise InvalidRationalError(
                    f"분모가 0입니다: {value!r}", {"field": field, "value": value}
                )
            return Fraction(numerator, denominator)
    raise InvalidRationalError(
        f"유리수는 \"p/q\" 문자열 또는 정수여야 합니다: {value!r}",
        {"field": field, "value": repr(value)},
    )


def format_rational(value: Fraction) -> str:
    """유리수를 항상 "p/q" 형태로 직렬화 (정수도 "3/1")"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
