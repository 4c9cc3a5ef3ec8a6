"""
Logging setup based on Loguru.

Console output goes to stderr so that transcripts, lint reports and metadata
printed on stdout stay machine readable. File sinks are optional:
- rotation at 10 MB
- 7 days retention
- zip compression of rotated files
"""

from loguru import logger
import sys
from pathlib import Path
from typing import Optional


CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} | {message}"

# file name -> minimum level; the level None follows log_level
FILE_SINKS = {"scb.log": None, "errors.log": "ERROR"}


def setup_logger(
    log_level: str = "INFO",
    log_dir: Optional[Path] = None,
    enable_console: bool = True,
    enable_file: bool = False,
    enqueue: bool = False
) -> None:
    """
    Configure Loguru sinks.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_dir: Directory for log files
        enable_console: Log to stderr
        enable_file: Log to rotating files inside log_dir
        enqueue: Write through a background queue (long running `serve`)
    """
    logger.remove()

    if enable_console:
        # sys.stderr is looked up per call so click's CliRunner can capture it
        logger.add(
            lambda message: sys.stderr.write(message),
            format=CONSOLE_FORMAT,
            level=log_level,
            colorize=False,
            enqueue=enqueue,
        )

    if enable_file and log_dir:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        for file_name, level in FILE_SINKS.items():
            logger.add(
                log_dir / file_name,
                format=FILE_FORMAT,
                level=level or log_level,
                rotation="10 MB",
                retention="7 days",
                compression="zip",
                backtrace=True,
                diagnose=False,
                enqueue=enqueue,
            )

    logger.debug(f"Logging initialised. Level: {log_level}")


def log_store_operation(
    operation: str,
    model: str,
    success: bool,
    duration_ms: Optional[float] = None,
    details: Optional[dict] = None
) -> None:
    """
    Log a community store operation.

    Args:
        operation: SELECT, INSERT, UPDATE, SEED, LOAD ...
        model: Table or entity name
        success: Whether the operation succeeded
        duration_ms: Duration in milliseconds
        details: Extra context
    """
    level = "DEBUG" if success else "ERROR"
    message = (
        f"Store operation | "
        f"Type: {operation} | "
        f"Model: {model} | "
        f"Success: {success}"
    )

    if duration_ms is not None:
        message += f" | Duration: {duration_ms:.2f}ms"

    if details:
        message += f" | Details: {details}"

    logger.log(level, message)


def log_api_request(
    method: str,
    path: str,
    status: int,
    duration_ms: Optional[float] = None
) -> None:
    """Log one handled API request."""
    level = "DEBUG" if status < 500 else "ERROR"
    message = f"API {method} {path} -> {status}"
    if duration_ms is not None:
        message += f" ({duration_ms:.2f}ms)"
    logger.log(level, message)


def log_run_event(event_type: str, details: Optional[dict] = None) -> None:
    """
    Log an interpreter run event.

    Args:
        event_type: start, end, fetch, abort ...
        details: Extra context
    """
    logger.info(f"Run event: {event_type} | Details: {details or {}}")


__all__ = [
    "logger",
    "setup_logger",
    "log_store_operation",
    "log_api_request",
    "log_run_event"
]
