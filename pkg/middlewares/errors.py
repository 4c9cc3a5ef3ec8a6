"""
Global error handling for the API service.

Turns exceptions raised while handling a request into JSON error responses
``{"error": ..., "field"?: ...}``. The same mapping is used by the in-process
transport so both paths report errors identically.
"""

from typing import Any, Awaitable, Callable, Dict, Tuple

from aiohttp import web

from utils.exceptions import ApiError, NotFoundError, ProgramSchemaError, ProgramSyntaxError, StoreValidationError
from utils.json_loader import canonical_json
from utils.logger import logger


def error_status(error: Exception) -> int:
    """HTTP status an exception maps to"""
    if isinstance(error, ApiError):
        return error.status
    if isinstance(error, NotFoundError):
        return 404
    if isinstance(error, StoreValidationError):
        return 400
    return 500


def error_payload(error: Exception) -> Tuple[int, Dict[str, Any]]:
    """
    Map an exception onto (status, JSON payload)

    Args:
        error: Exception raised by routing or query execution

    Returns:
        Tuple of (HTTP status, payload)
    """
    if isinstance(error, ApiError):
        return error.status, error.to_payload()

    if isinstance(error, NotFoundError):
        return 404, {"error": error.message}

    if isinstance(error, StoreValidationError):
        return 400, {"error": error.message, "field": error.field}

    if isinstance(error, (ProgramSyntaxError, ProgramSchemaError)):
        # stored code that no longer parses
        logger.error(f"Stored program is invalid: {error}")
        return 500, {"error": "stored program is invalid"}

    logger.opt(exception=error).error(f"Unexpected error while handling request: {error}")
    return 500, {"error": "internal server error"}


def json_response(status: int, payload: Any) -> web.Response:
    """Canonical JSON response"""
    return web.Response(status=status, text=canonical_json(payload), content_type="application/json")


@web.middleware
async def error_middleware(
    request: web.Request,
    handler: Callable[[web.Request], Awaitable[web.StreamResponse]],
) -> web.StreamResponse:
    """Catch everything below and answer with a JSON error"""
    try:
        return await handler(request)

    except web.HTTPException as e:
        # raised by aiohttp itself (e.g. oversized body)
        logger.warning(f"HTTP error {e.status} on {request.method} {request.rel_url}")
        return json_response(e.status, {"error": e.reason})

    except (ApiError, NotFoundError, StoreValidationError) as e:
        status, payload = error_payload(e)
        logger.debug(f"{request.method} {request.rel_url} rejected: {status} {e.message}")
        return json_response(status, payload)

    except Exception as e:
        status, payload = error_payload(e)
        return json_response(status, payload)


__all__ = ["error_status", "error_payload", "json_response", "error_middleware"]
