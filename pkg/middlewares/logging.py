"""
Request logging for the API service.

Logs every handled request with its status and duration, and stamps the
response with the store revision it was served from (``X-Store-Seq``).
"""

import time
from typing import Awaitable, Callable

from aiohttp import web

from api.keys import STORE_KEY
from utils.logger import log_api_request

STORE_SEQ_HEADER = "X-Store-Seq"


@web.middleware
async def logging_middleware(
    request: web.Request,
    handler: Callable[[web.Request], Awaitable[web.StreamResponse]],
) -> web.StreamResponse:
    start = time.perf_counter()
    response = await handler(request)

    store = request.app.get(STORE_KEY)
    if store is not None:
        response.headers[STORE_SEQ_HEADER] = str(store.revision)

    log_api_request(
        method=request.method,
        path=str(request.rel_url),
        status=response.status,
        duration_ms=(time.perf_counter() - start) * 1000,
    )
    return response


__all__ = ["logging_middleware", "STORE_SEQ_HEADER"]
