"""
aiohttp middlewares of the API service
"""

from middlewares.errors import error_middleware
from middlewares.logging import logging_middleware

__all__ = [
    "error_middleware",
    "logging_middleware",
]
