"""
Unit tests for loose value semantics

Run with: pytest tests/unit/test_values.py -v
"""

import math

import pytest

from interpreter.values import (
    compare,
    divide,
    equals,
    format_number,
    is_numeric,
    join,
    length_of,
    modulo,
    round_half_up,
    to_bool,
    to_number,
    to_text,
)

pytestmark = pytest.mark.unit


@pytest.mark.parametrize("value,expected", [
    ("3", 3.0),
    (" 2.5 ", 2.5),
    ("1e3", 1000.0),
    ("abc", 0.0),
    ("", 0.0),
    (True, 1.0),
    (False, 0.0),
    ("Infinity", math.inf),
    ("-Infinity", -math.inf),
])
def test_to_number(value, expected):
    """Test numeric coercion of strings and booleans"""
    assert to_number(value) == expected


def test_numeric_strings_add():
    """Test add("3", 4) → 7"""
    assert to_text(to_number("3") + to_number(4)) == "7"


@pytest.mark.parametrize("number,text", [
    (7.0, "7"),
    (0.75, "0.75"),
    (-0.0, "0"),
    (1 / 3, "0.3333333333333333"),
    (1e21, "1e+21"),
    (1.5e-7, "1.5e-7"),
    (math.inf, "Infinity"),
    (-math.inf, "-Infinity"),
    (math.nan, "NaN"),
])
def test_format_number(number, text):
    """Test shortest round-trip rendering"""
    assert format_number(number) == text


def test_to_text_of_booleans_and_strings():
    assert to_text(True) == "true"
    assert to_text(False) == "false"
    assert to_text("Cat Maze") == "Cat Maze"


def test_division_by_zero():
    """Test IEEE results of division by zero"""
    assert divide(1, 0) == math.inf
    assert divide(-1, 0) == -math.inf
    assert math.isnan(divide(0, 0))
    assert to_text(divide(1, 0)) == "Infinity"


def test_modulo_takes_sign_of_divisor():
    assert modulo(7, 3) == 1
    assert modulo(-7, 3) == 2
    assert modulo(7, -3) == -2
    assert math.isnan(modulo(1, 0))


def test_round_half_up():
    assert round_half_up(2.5) == 3
    assert round_half_up(-2.5) == -2
    assert round_half_up("1.4") == 1
    assert math.isinf(round_half_up(math.inf))


def test_length_of_join():
    """Test length_of(join("Cat ", "Maze")) → 8"""
    assert length_of(join("Cat ", "Maze")) == 8


def test_join_renders_numbers():
    assert join("n=", 3.0) == "n=3"
    assert join(0.1 + 0.2, "") == "0.30000000000000004"


def test_equality_is_case_insensitive_for_text():
    assert equals("Spain", "spain")
    assert not equals("Spain", "Spai")


def test_equality_is_numeric_for_numbers():
    assert equals("1.0", 1)
    assert equals(" 2 ", "2")
    assert not equals("01a", "1a ")


def test_compare_mixed():
    assert compare(10, 9) == 1
    assert compare("10", "9") == 1
    assert compare("apple", "Banana") == -1


def test_to_bool():
    assert to_bool("true")
    assert not to_bool("false")
    assert not to_bool("0")
    assert not to_bool("")
    assert to_bool("hello")
    assert not to_bool(0)
    assert not to_bool(math.nan)


def test_is_numeric():
    assert is_numeric("42")
    assert is_numeric(3.5)
    assert not is_numeric(True)
    assert not is_numeric("4 2")


# ==================== INTEGERS PAST DOUBLE RANGE ====================

def test_huge_integers_saturate_to_infinity():
    """Test that ints a double cannot hold coerce instead of overflowing"""
    assert to_number(10 ** 400) == math.inf
    assert to_number(-(10 ** 400)) == -math.inf
    assert to_text(10 ** 400) == "Infinity"
    assert to_text(-(10 ** 400)) == "-Infinity"


def test_huge_integers_in_operators():
    assert join("n=", 10 ** 400) == "n=Infinity"
    assert length_of(10 ** 400) == len("Infinity")
    assert to_bool(10 ** 400)
    assert compare(10 ** 400, 1e308) == 1
    assert math.isinf(round_half_up(10 ** 400))
    assert math.isnan(modulo(10 ** 400, 3))
