"""
Shared utilities.

- logger.py: Loguru setup and helper loggers
- exceptions.py: error hierarchy with CLI exit codes
- json_loader.py: canonical JSON, digests, Pydantic-validated loading
- metrics.py: Prometheus counters
"""

from utils.logger import logger, setup_logger
from utils.json_loader import canonical_json, digest, read_json_file, write_json_file

__all__ = [
    'logger',
    'setup_logger',
    'canonical_json',
    'digest',
    'read_json_file',
    'write_json_file',
]
