"""
aiohttp application serving the community store
"""

import asyncio
from typing import Optional

from aiohttp import web

from api.accounting import RequestCounter
from api.dispatch import dispatch
from api.keys import COUNTER_KEY, PAGE_SIZE_KEY, STORE_KEY
from api.routes import DEFAULT_LIMIT
from database.store import CommunityStore
from middlewares.errors import error_middleware, json_response
from middlewares.logging import logging_middleware
from utils.exceptions import ConfigurationError
from utils.logger import logger
from utils.metrics import CONTENT_TYPE_LATEST, metrics


async def handle_api(request: web.Request) -> web.Response:
    """Every endpoint of the table goes through the shared dispatcher"""
    body = await request.text() if request.can_read_body else ""
    payload = await dispatch(
        request.app[STORE_KEY],
        request.app[COUNTER_KEY],
        request.method,
        request.rel_url.raw_path,
        dict(request.rel_url.query),
        body,
        request.app[PAGE_SIZE_KEY],
    )
    return json_response(200, payload)


async def handle_debug_requests(request: web.Request) -> web.Response:
    return json_response(200, request.app[COUNTER_KEY].snapshot())


async def handle_debug_reset(request: web.Request) -> web.Response:
    request.app[COUNTER_KEY].reset()
    return json_response(200, request.app[COUNTER_KEY].snapshot())


async def handle_metrics(request: web.Request) -> web.Response:
    response = web.Response(text=metrics.get_metrics())
    response.headers["Content-Type"] = CONTENT_TYPE_LATEST
    return response


def create_app(
    store: CommunityStore,
    counter: Optional[RequestCounter] = None,
    page_size: int = DEFAULT_LIMIT,
) -> web.Application:
    """
    Build the API application.

    Args:
        store: community store to serve
        counter: request accounting (a fresh one by default)
        page_size: default list limit
    """
    app = web.Application(middlewares=[logging_middleware, error_middleware])
    app[STORE_KEY] = store
    app[COUNTER_KEY] = counter or RequestCounter()
    app[PAGE_SIZE_KEY] = page_size

    app.router.add_get("/api/_debug/requests", handle_debug_requests)
    app.router.add_delete("/api/_debug/requests", handle_debug_reset)
    app.router.add_get("/metrics", handle_metrics)
    app.router.add_route("*", "/{tail:.*}", handle_api)
    return app


async def start(app: web.Application, host: str, port: int) -> web.AppRunner:
    """Bind and start serving; returns the runner to clean up with"""
    runner = web.AppRunner(app, access_log=None)
    await runner.setup()
    site = web.TCPSite(runner, host, port)
    try:
        await site.start()
    except OSError as e:
        await runner.cleanup()
        raise ConfigurationError("bind", f"cannot listen on {host}:{port}: {e}") from e
    logger.info(f"API service listening on http://{host}:{port}")
    return runner


async def serve(
    store: CommunityStore,
    host: str = "127.0.0.1",
    port: int = 8080,
    page_size: int = DEFAULT_LIMIT,
) -> None:
    """Serve until cancelled"""
    runner = await start(create_app(store, page_size=page_size), host, port)
    try:
        await asyncio.Event().wait()
    finally:
        await runner.cleanup()
        logger.info("API service stopped")


__all__ = ["create_app", "start", "serve"]
