"""
Exception hierarchy shared by the store, the program toolchain, the API service,
the fetch layer and the CLI.

Every error carries an ``exit_code`` so the CLI can map failures onto its stable
exit-code contract (2 input, 3 identity, 4 transport).
"""

from typing import Optional


class ScbError(Exception):
    """Base class for all errors raised by this project"""

    exit_code: int = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigurationError(ScbError):
    """Invalid configuration value (env var, seed config, CLI option)"""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class NotFoundError(ScbError):
    """Unknown user, project or route"""

    def __init__(self, kind: str, key: object):
        super().__init__(f"unknown {kind}: {key}")
        self.kind = kind
        self.key = key


class StoreValidationError(ScbError):
    """Rejected store write or malformed store document"""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ProgramSyntaxError(ScbError):
    """Program text is not well-formed JSON"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ProgramSchemaError(ScbError):
    """Program JSON does not match the block grammar (lint rule L0)"""

    rule = "L0"

    def __init__(self, path: str, field: str, message: str):
        super().__init__(f"{path}: {field}: {message}")
        self.path = path
        self.field = field
        self.detail = message


class ApiError(ScbError):
    """HTTP-level error with a status code"""

    def __init__(self, status: int, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.status = status
        self.field = field

    def to_payload(self) -> dict:
        payload = {"error": self.message}
        if self.field:
            payload["field"] = self.field
        return payload


class TransportError(ScbError):
    """The API service could not be reached or answered garbage"""

    exit_code = 4

    def __init__(self, endpoint: str, reason: str):
        super().__init__(f"transport failure on {endpoint}: {reason}")
        self.endpoint = endpoint


class SessionBusyError(ScbError):
    """Session API misuse, e.g. flushing the cache while a run is in progress"""


class UnknownViewerError(ScbError):
    """The viewer identity does not exist in the target store"""

    exit_code = 3

    def __init__(self, viewer: str):
        super().__init__(f"unknown viewer: {viewer}")
        self.viewer = viewer


__all__ = [
    "ScbError",
    "ConfigurationError",
    "NotFoundError",
    "StoreValidationError",
    "ProgramSyntaxError",
    "ProgramSchemaError",
    "ApiError",
    "TransportError",
    "SessionBusyError",
    "UnknownViewerError",
]
