"""
JSON loading with Pydantic validation and canonical JSON rendering.

Canonical rendering (sorted keys, fixed separators, integral floats written as
integers) is used for store files, program files, API responses and digests, so
byte-level comparisons are meaningful.
"""

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Type, TypeVar

from pydantic import BaseModel, ValidationError

from utils.exceptions import ConfigurationError, StoreValidationError
from utils.logger import logger

ModelT = TypeVar("ModelT", bound=BaseModel)


def _normalize(value: Any) -> Any:
    """Recursively turn integral floats into ints so 3.0 renders as 3"""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isfinite(value) and value.is_integer() and abs(value) < 2 ** 53:
            return int(value)
        return value
    if isinstance(value, dict):
        return {key: _normalize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(item) for item in value]
    return value


def canonical_json(data: Any, indent: int | None = None) -> str:
    """
    Render data as canonical JSON.

    Args:
        data: JSON-compatible structure
        indent: None for the compact wire form, 2 for files

    Returns:
        str: canonical text (files end with a newline)
    """
    separators = (",", ":") if indent is None else (",", ": ")
    text = json.dumps(
        _normalize(data),
        sort_keys=True,
        ensure_ascii=False,
        allow_nan=False,
        indent=indent,
        separators=separators,
    )
    return text if indent is None else text + "\n"


def digest(data: Any) -> str:
    """SHA-256 of the compact canonical rendering"""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def read_json_file(file_path: str | Path) -> Any:
    """
    Read and decode a JSON file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        StoreValidationError: If the JSON is malformed
    """
    path = Path(file_path)

    if not path.exists():
        error_msg = f"JSON file not found: {file_path}"
        logger.error(error_msg)
        raise FileNotFoundError(error_msg)

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        error_msg = f"Invalid JSON format in {file_path}: {e}"
        logger.error(error_msg)
        raise StoreValidationError(str(file_path), error_msg) from e
    except (UnicodeDecodeError, ValueError) as e:
        # bytes that are not UTF-8, or integers past the digit limit
        error_msg = f"Unreadable JSON in {file_path}: {e}"
        logger.error(error_msg)
        raise StoreValidationError(str(file_path), error_msg) from e

    logger.debug(f"Loaded JSON from: {file_path}")
    return data


def validate_model(model: Type[ModelT], data: Any, error_cls: type = ConfigurationError) -> ModelT:
    """
    Validate decoded JSON against a Pydantic model.

    The first validation error is re-raised as ``error_cls(field, message)`` so
    callers see the offending field by name.
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or model.__name__
        message = first["msg"]
        if message.startswith("Value error, "):
            message = message[len("Value error, "):]
        logger.warning(f"Validation failed for {model.__name__}: {field}: {message}")
        raise error_cls(field, message) from e


def write_json_file(file_path: str | Path, data: Any) -> str:
    """Write canonical (indented) JSON and return the text written"""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = canonical_json(data, indent=2)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote JSON to: {file_path}")
    return text


__all__ = [
    "canonical_json",
    "digest",
    "read_json_file",
    "validate_model",
    "write_json_file",
]
