"""
Unit tests for JSON loader utility

Run with: pytest tests/test_json_loader.py -v
"""

import json
import sys

import pytest

from database.schemas import SeedConfig
from utils.exceptions import ConfigurationError, StoreValidationError
from utils.json_loader import canonical_json, digest, read_json_file, validate_model, write_json_file


@pytest.fixture
def sample_json_file(tmp_path):
    """Create a sample JSON file for testing"""
    json_file = tmp_path / "sample.json"
    json_file.write_text(json.dumps({"b": 1, "a": [1.0, 2.5]}), encoding="utf-8")
    return json_file


def test_read_json_file(sample_json_file):
    assert read_json_file(sample_json_file) == {"b": 1, "a": [1.0, 2.5]}


def test_read_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_json_file(tmp_path / "nope.json")


def test_read_invalid_json(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(StoreValidationError):
        read_json_file(broken)


def test_read_non_utf8_json(tmp_path):
    broken = tmp_path / "latin.json"
    broken.write_bytes(b'{"about": "caf\xe9"}')
    with pytest.raises(StoreValidationError, match="Unreadable JSON"):
        read_json_file(broken)


@pytest.mark.skipif(not hasattr(sys, "get_int_max_str_digits"), reason="no integer digit limit")
def test_read_oversized_integer(tmp_path):
    huge = tmp_path / "huge.json"
    huge.write_text("[" + "9" * 5000 + "]", encoding="utf-8")
    with pytest.raises(StoreValidationError):
        read_json_file(huge)


def test_canonical_json_compact():
    """Test sorted keys, fixed separators, integral floats as integers"""
    assert canonical_json({"b": 1.0, "a": [2.5, True]}) == '{"a":[2.5,true],"b":1}'


def test_canonical_json_file_form():
    text = canonical_json({"b": 1, "a": "ñ"}, indent=2)
    assert text == '{\n  "a": "ñ",\n  "b": 1\n}\n'


def test_canonical_json_rejects_nan():
    with pytest.raises(ValueError):
        canonical_json({"x": float("nan")})


def test_digest_ignores_key_order():
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1.0})
    assert digest({"a": 1}) != digest({"a": 2})


def test_write_json_file(tmp_path):
    target = tmp_path / "nested" / "out.json"
    text = write_json_file(target, {"z": 1, "a": 2})
    assert target.read_text(encoding="utf-8") == text
    assert text.startswith('{\n  "a": 2')


def test_validate_model_reports_field():
    """Test that the first validation error names its field"""
    with pytest.raises(ConfigurationError) as exc_info:
        validate_model(SeedConfig, {"seed": 1, "users": 0})
    assert exc_info.value.field == "users"
    assert "users must be ≥ 1" in exc_info.value.message


def test_validate_model_custom_error_class():
    with pytest.raises(StoreValidationError):
        validate_model(SeedConfig, {"seed": "x", "users": 1}, StoreValidationError)
