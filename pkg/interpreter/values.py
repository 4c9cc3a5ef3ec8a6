"""
Loose value semantics of the block language.

Values are strings, numbers or booleans. Arithmetic coerces numeric strings to
numbers and everything else to 0; text contexts render numbers with the
shortest round-trip decimal; comparisons are numeric when both sides look like
numbers and case-insensitive otherwise.
"""

import math
import re
from typing import Union

Value = Union[str, int, float, bool]

_NUMERIC = re.compile(
    r"^\s*[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|Infinity)\s*$"
)
_EXPONENT = re.compile(r"e([+-])0*(\d+)$")


def is_numeric(value: Value) -> bool:
    """Numbers (not booleans) and strings that read as a number"""
    if isinstance(value, bool):
        return False
    if isinstance(value, (int, float)):
        return True
    return bool(_NUMERIC.match(value))


def to_number(value: Value) -> float:
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    if isinstance(value, (int, float)):
        try:
            return float(value)
        except OverflowError:
            return math.inf if value > 0 else -math.inf
    if _NUMERIC.match(value):
        return float(value.strip())
    return 0.0


def format_number(number: float) -> str:
    if math.isnan(number):
        return "NaN"
    if math.isinf(number):
        return "Infinity" if number > 0 else "-Infinity"
    if number.is_integer() and abs(number) < 1e21:
        return str(int(number))
    return _EXPONENT.sub(lambda m: f"e{m.group(1)}{m.group(2)}", repr(number))


def to_text(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format_number(to_number(value))
    return value


def to_bool(value: Value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        number = to_number(value)
        return number != 0 and not math.isnan(number)
    return value.strip().lower() not in ("", "0", "false")


def compare(left: Value, right: Value) -> int:
    """-1, 0 or 1"""
    if is_numeric(left) and is_numeric(right):
        a, b = to_number(left), to_number(right)
        if math.isnan(a) or math.isnan(b):
            a_text, b_text = to_text(left).lower(), to_text(right).lower()
            return (a_text > b_text) - (a_text < b_text)
        return (a > b) - (a < b)
    a_text, b_text = to_text(left).lower(), to_text(right).lower()
    return (a_text > b_text) - (a_text < b_text)


def equals(left: Value, right: Value) -> bool:
    return compare(left, right) == 0


def divide(left: Value, right: Value) -> float:
    a, b = to_number(left), to_number(right)
    if b == 0:
        if a == 0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


def modulo(left: Value, right: Value) -> float:
    """Result takes the sign of the divisor"""
    a, b = to_number(left), to_number(right)
    if b == 0 or math.isinf(a) or math.isnan(a) or math.isnan(b):
        return math.nan
    if math.isinf(b):
        return a if (a >= 0) == (b > 0) else b
    return a % b


def round_half_up(value: Value) -> float:
    number = to_number(value)
    if not math.isfinite(number):
        return number
    return float(math.floor(number + 0.5))


def length_of(value: Value) -> int:
    return len(to_text(value))


def join(left: Value, right: Value) -> str:
    return to_text(left) + to_text(right)


__all__ = [
    "Value",
    "is_numeric",
    "to_number",
    "format_number",
    "to_text",
    "to_bool",
    "compare",
    "equals",
    "divide",
    "modulo",
    "round_half_up",
    "length_of",
    "join",
]
