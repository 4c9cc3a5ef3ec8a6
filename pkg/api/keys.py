"""
Typed application keys shared by the API handlers and middlewares
"""

from aiohttp import web

STORE_KEY = web.AppKey("store")
COUNTER_KEY = web.AppKey("request_counter")
PAGE_SIZE_KEY = web.AppKey("page_size", int)

__all__ = ["STORE_KEY", "COUNTER_KEY", "PAGE_SIZE_KEY"]
